#pragma once
// generated by tests/oracle/oracle.py; do not edit

namespace oracle {

constexpr int l0_5_2 = 8;
constexpr int l0_3 = 2;
constexpr int l0_4 = 1;
constexpr int l0_13_5 = 5;

constexpr const char* menshov3_norm_sq = "266681/5644800";
constexpr bool menshov_norm_below_one = true;

constexpr const char* rearranged_const_p1_t3_k30 = "536870911/1073741824";
constexpr const char* rearranged_const_p1_t3_k20 = "524287/1048576";

constexpr const char* rad10_l4_pow4 = "394009/1";
constexpr double rad10_l4_ratio = 1.2768684929735425;

constexpr const char* k3_delta = "1/2";
constexpr const char* k3_entries[16] = {"1/2", "1/2", "1/2", "1/2", "1/2", "-1/2", "-1/2", "1/2", "-1/2", "1/2", "-1/2", "1/2", "-1/2", "-1/2", "1/2", "1/2"};
constexpr bool k3_orthogonal = true;
constexpr double k2_delta = 0.7886751345948129;
constexpr double k2_residual_bound = 3.3306690738754696e-14;

constexpr int desk_stages_within_kmax = 2;
constexpr int desk_k[2] = {8, 17};
constexpr long desk_m[2] = {1018, 524276};
constexpr int paper_k1 = 13;
constexpr long paper_m1 = 32762;

} // namespace oracle
