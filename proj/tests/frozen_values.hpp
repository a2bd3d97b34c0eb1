#pragma once

// Generated by tests/oracle/derive.py (scipy HiGHS LP, numpy eigensolves).

#include <array>

namespace frozen {

// deg_{1/3} of the function whose truth table is the bits of the index.
inline constexpr std::array<int, 4> kDegreeArity1 = {0, 1, 1, 0};
inline constexpr std::array<int, 16> kDegreeArity2 = {0, 1, 1, 1, 1, 1, 2, 1, 1, 2, 1, 1, 1, 1, 1, 0};
inline constexpr std::array<int, 256> kDegreeArity3 = {0, 1, 1, 1, 1, 1, 2, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 2, 1, 3, 1, 2, 2, 2, 2, 2, 2, 2, 1, 1, 2, 1, 1, 2, 2, 2, 2, 2, 3, 1, 1, 2, 2, 2, 1, 1, 1, 1, 1, 2, 2, 2, 1, 2, 2, 2, 1, 2, 2, 2, 1, 1, 2, 2, 2, 1, 1, 2, 2, 2, 3, 2, 2, 1, 1, 2, 1, 1, 1, 2, 2, 1, 1, 2, 1, 2, 2, 2, 2, 2, 1, 2, 1, 2, 3, 2, 2, 2, 2, 2, 2, 3, 3, 2, 3, 2, 3, 2, 2, 1, 1, 2, 1, 2, 1, 2, 1, 2, 3, 2, 2, 2, 2, 2, 1, 1, 2, 2, 2, 2, 2, 3, 2, 1, 2, 1, 2, 1, 2, 1, 1, 2, 2, 3, 2, 3, 2, 3, 3, 2, 2, 2, 2, 2, 2, 3, 2, 1, 2, 1, 2, 2, 2, 2, 2, 1, 2, 1, 1, 2, 2, 1, 1, 1, 2, 1, 1, 2, 2, 3, 2, 2, 2, 1, 1, 2, 2, 2, 1, 1, 2, 2, 2, 1, 2, 2, 2, 1, 2, 2, 2, 1, 1, 1, 1, 1, 2, 2, 2, 1, 1, 3, 2, 2, 2, 2, 2, 1, 1, 2, 1, 1, 2, 2, 2, 2, 2, 2, 2, 1, 3, 1, 2, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 2, 1, 1, 1, 1, 1, 0};

inline constexpr int kDegreeOr4 = 2;
inline constexpr int kDegreeAnd4 = 2;
inline constexpr int kDegreeParity4 = 4;
inline constexpr int kDegreeParity5 = 5;
inline constexpr int kDegreeMaj5 = 1;
inline constexpr int kDegreeOr6 = 2;

// rho of the DISJ pair for k = 3, 6, 9, 12.
inline constexpr std::array<double, 4> kDisjRho = {0.75, 0.37500000000000006, 0.25000000000000006, 0.1875000000000001};

// Repetition schedule r(Delta) for Delta = 0..64.
inline constexpr std::array<int, 65> kSchedule = {1, 21, 33, 33, 41, 41, 41, 41, 45, 45, 45, 45, 45, 45, 45, 45, 49, 49, 49, 49, 49, 49, 49, 49, 49, 49, 49, 49, 49, 49, 49, 49, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 53, 55};

// ceil(6 sqrt(2) e / c) for c = 1, 1/2, 2, 32.6.
inline constexpr std::array<int, 4> kLargeCaseK = {24, 47, 12, 1};

}  // namespace frozen
