#pragma once

#include <cstddef>

namespace masse {

// Constants generated by scripts/derive_curves.py. Both curves share the
// tower Fp2 = Fp[u]/(u^2+1), xi = 1+u, and an M-type sextic twist
// y^2 = x^3 + B*xi.

struct Bls12_381 {
    static constexpr int LAMBDA = 128;
    static constexpr std::size_t KEY_BYTES = 16;
    static constexpr std::size_t NLIMBS = 6;
    static constexpr std::size_t FP_BYTES = 48;
    static constexpr std::size_t SCALAR_BYTES = 32;
    static constexpr unsigned B = 4;
    static constexpr bool Z_NEG = true;
    static constexpr const char* NAME = "bls12-381";
    static constexpr const char* P_HEX =
        "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0"
        "f6241eabfffeb153ffffb9feffffffffaaab";
    static constexpr const char* R_HEX =
        "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";
    static constexpr const char* Z_ABS_HEX = "d201000000010000";
    static constexpr const char* G1_X_HEX =
        "17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171b"
        "ac586c55e83ff97a1aeffb3af00adb22c6bb";
    static constexpr const char* G1_Y_HEX =
        "08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04"
        "b3edd03cc744a2888ae40caa232946c5e7e1";
    static constexpr const char* G2_X_C0_HEX =
        "098ae1df331911bea17a956372429d81cb732a4f94f6e46f67a98f5f32be"
        "5b8952f8e51a457eaffe3c9a72b9878e6069";
    static constexpr const char* G2_X_C1_HEX =
        "014060c735fce29033d0b23bece257a167ca6eb74d15c8c89d9cac658eba"
        "e72c8272b958b80d279a993a7bd11b4424dd";
    static constexpr const char* G2_Y_C0_HEX =
        "0f9e229014487b4ab10327de28f30dfa6b7791c0e24983802dd19142db26"
        "376e416cacc438e2b8d87cc4f43e5267c4bc";
    static constexpr const char* G2_Y_C1_HEX =
        "0c43d8927521445a75dbab9e57b92a432c2984379f9118d44bf58eb2b3f1"
        "e65b158dccf973c156851ee04d869f20ebc0";
};

struct Bls12_383 {
    static constexpr int LAMBDA = 256;
    static constexpr std::size_t KEY_BYTES = 32;
    static constexpr std::size_t NLIMBS = 6;
    static constexpr std::size_t FP_BYTES = 48;
    static constexpr std::size_t SCALAR_BYTES = 33;
    static constexpr unsigned B = 4;
    static constexpr bool Z_NEG = false;
    static constexpr const char* NAME = "bls12-383";
    static constexpr const char* P_HEX =
        "555555651555568abeaab7483caaf42aeafb8a905da7af2648ffc685e901"
        "55d15d55569aea555555aaaaaaad4aaaaaab";
    static constexpr const char* R_HEX =
        "10000001f80000174180007a17e000f04f00ffff03fffffc1fc00000000000001";
    static constexpr const char* Z_ABS_HEX = "100000007e0000000";
    static constexpr const char* G1_X_HEX =
        "0086411e3795d60a213e0eeefe2b173cea7bec62a0e7605257d21632a102"
        "6dc277d00163e04ce345758c50f9ee5e13cf";
    static constexpr const char* G1_Y_HEX =
        "396859d67cddc95fb6b039ec018a7ced35dee82af9c9bbe70b62050ac2c3"
        "f171358b5053f67f290c8e83370e6c17c592";
    static constexpr const char* G2_X_C0_HEX =
        "178a3231f5a78d89232a89d284db74e96430e8fa35b54b84a7f3a0632519"
        "4b3eebea88ffdb79e1c2a3bdcf773ed162c2";
    static constexpr const char* G2_X_C1_HEX =
        "5057b327c2ea3ba1e701c98c41419065fb7d139404f92fc16f62575827c2"
        "99ffe51c2100636fc2b09e2b3b980c28c316";
    static constexpr const char* G2_Y_C0_HEX =
        "17054255ca0d1d7b145e149185662112b8d1fe673fb07bfc349a4ec0a5dc"
        "3682aefac84ddce1e18d25a316cc07542e6b";
    static constexpr const char* G2_Y_C1_HEX =
        "42723c4a454ddfc405269daa32a8da1d0db12c29dc3168a5d5cd9a123571"
        "7efef22b5bf5ac46ef718a9968fea9d6565b";
};

}  // namespace masse
