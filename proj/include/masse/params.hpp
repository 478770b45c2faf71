#pragma once

#include <string>

#include "masse/common.hpp"
#include "masse/curve.hpp"
#include "masse/pairing.hpp"

namespace masse {

// Runtime descriptor of a group configuration, for display and for
// validating persisted state against the binary it is loaded into.
struct PublicParams {
    int lambda = 0;
    std::string curve;
    std::string group_order_hex;
    std::size_t key_bytes = 0;
    std::size_t scalar_bytes = 0;
    std::size_t g1_bytes = 0;
    std::size_t g2_bytes = 0;
    std::size_t gt_bytes = 0;
};

template <class C>
PublicParams params_for() {
    PublicParams pp;
    pp.lambda = C::LAMBDA;
    pp.curve = C::NAME;
    pp.group_order_hex = C::R_HEX;
    pp.key_bytes = C::KEY_BYTES;
    pp.scalar_bytes = C::SCALAR_BYTES;
    pp.g1_bytes = G1<C>::BYTES;
    pp.g2_bytes = G2<C>::BYTES;
    pp.gt_bytes = GT<C>::BYTES;
    return pp;
}

inline PublicParams setup_params(int lambda) {
    if (lambda == Bls12_381::LAMBDA)
        return params_for<Bls12_381>();
    if (lambda == Bls12_383::LAMBDA)
        return params_for<Bls12_383>();
    throw ConfigError("unsupported security parameter (use 128 or 256)");
}

// Runtime-to-template dispatch for the command line tools.
template <class Fn>
decltype(auto) dispatch_lambda(int lambda, Fn&& fn) {
    if (lambda == Bls12_381::LAMBDA)
        return fn(Bls12_381{});
    if (lambda == Bls12_383::LAMBDA)
        return fn(Bls12_383{});
    throw ConfigError("unsupported security parameter (use 128 or 256)");
}

}  // namespace masse
