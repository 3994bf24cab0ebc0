// SPDX-License-Identifier: MIT
#pragma once

#include "slc/money.hpp"

namespace slc {

struct EconomicParams {
    Money c;             // running a personal full node
    Money v;             // value at stake for the client
    Money v1, v2;        // per-relay malicious benefit bounds
    Rational rho{1, 2};  // probability the queried predicate is true
    Money epsilon;       // crypto-break payoff; 0 with simulated crypto
    bool no_common_conflict = false;  // then v1*v2 must be 0

    bool valid() const;
};

inline bool EconomicParams::valid() const {
    if (c.is_negative() || v.is_negative() || v1.is_negative() || v2.is_negative()) return false;
    if (rho < 0 || rho > 1) return false;
    if (no_common_conflict && !v1.is_zero() && !v2.is_zero()) return false;
    return true;
}

}  // namespace slc
