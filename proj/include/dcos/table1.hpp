#ifndef DCOS_TABLE1_HPP
#define DCOS_TABLE1_HPP

#include <vector>

namespace dcos {

// Known counts of (P,P)-double cosets of size 2^(m+k) in S_n for p = 2,
// n = 1..18, k ascending from 0. Trailing zero columns are omitted here;
// row n covers k = 0..m with m the 2-adic exponent of n!.
inline const std::vector<std::vector<long>>& p2_reference_counts() {
  static const std::vector<std::vector<long>> rows = {
      {},                                    // n = 0 (unused)
      {1},                                   // 1
      {1},                                   // 2
      {1, 1},                                // 3
      {1, 1},                                // 4
      {1, 1, 1, 1},                          // 5
      {1, 2, 2, 2, 1},                       // 6
      {1, 3, 7, 13, 11},                     // 7
      {1, 1, 2, 4, 3, 3, 2},                 // 8
      {1, 1, 2, 5, 6, 10, 15, 11},           // 9
      {1, 1, 3, 8, 13, 22, 32, 43, 22},      // 10
      {1, 2, 4, 14, 39, 97, 218, 395, 342},  // 11
      {1, 3, 8, 17, 27, 53, 97, 154, 247, 341, 197},          // 12
      {1, 3, 9, 23, 53, 150, 399, 965, 2173, 3818, 3335},     // 13
      {1, 4, 15, 50, 135, 341, 826, 1942, 4399, 8983, 13737,
       10967},                                                // 14
      {1, 5, 22, 89, 328, 1202, 4268, 13960, 41210, 104946, 194791,
       181963},                                               // 15
      {1, 1, 2, 6, 15, 24, 55, 100, 209, 407, 955, 1938, 4755, 8390, 13783,
       9743},                                                 // 16
      {1, 1, 2, 6, 16, 29, 77, 189, 537, 1609, 5223, 15898, 45965, 113336,
       208574, 191706},                                       // 17
      {1, 1, 2, 7, 21, 51, 158, 442, 1240, 3555, 10602, 32233, 95157,
       257733, 589685, 974086, 816834},                       // 18
  };
  return rows;
}

inline long p2_reference_total(int n) {
  long s = 0;
  for (long c : p2_reference_counts()[n]) s += c;
  return s;
}

}  // namespace dcos

#endif
