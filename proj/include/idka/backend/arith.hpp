// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/params.hpp"
#include "idka/backend/types.hpp"

namespace idka
{

// Scalars mod q.

Scalar make_scalar(const PairingParams& pp, const mpz_class& v);
Scalar scalar_add(const PairingParams& pp, const Scalar& a, const Scalar& b);
Scalar scalar_sub(const PairingParams& pp, const Scalar& a, const Scalar& b);
Scalar scalar_mul(const PairingParams& pp, const Scalar& a, const Scalar& b);
Scalar scalar_neg(const PairingParams& pp, const Scalar& a);
/// Throws ValidationError for zero.
Scalar scalar_inv(const PairingParams& pp, const Scalar& a);

// G1, additive.

bool on_curve(const PairingParams& pp, const G1Point& a);
/// On curve and annihilated by q.
bool in_subgroup(const PairingParams& pp, const G1Point& a);

G1Point g1_add(const PairingParams& pp, const G1Point& a, const G1Point& b);
G1Point g1_neg(const PairingParams& pp, const G1Point& a);
G1Point g1_mul(const PairingParams& pp, const Scalar& k, const G1Point& a);
/// Multiplication by an arbitrary non-negative integer (cofactor clearing, order checks).
G1Point g1_mul_int(const PairingParams& pp, const mpz_class& k, const G1Point& a);

// Target group, multiplicative.

GtElement gt_one();
bool gt_in_subgroup(const PairingParams& pp, const GtElement& u);
GtElement gt_mul(const PairingParams& pp, const GtElement& u, const GtElement& v);
GtElement gt_exp(const PairingParams& pp, const GtElement& u, const Scalar& k);
GtElement gt_inv(const PairingParams& pp, const GtElement& u);

/// Symmetric Tate pairing e(A, B) = f_{q,A}(phi(B))^((p^2-1)/q) with distortion
/// phi(x, y) = (-x, i*y). Inputs must lie in the order-q subgroup.
GtElement pairing(const PairingParams& pp, const G1Point& a, const G1Point& b);

namespace detail
{
Fp2 fp2_mul(const mpz_class& p, const Fp2& a, const Fp2& b);
Fp2 fp2_sqr(const mpz_class& p, const Fp2& a);
Fp2 fp2_inv(const mpz_class& p, const Fp2& a);
Fp2 fp2_pow(const mpz_class& p, const Fp2& a, const mpz_class& e);

G1Point add_unchecked(const mpz_class& p, const G1Point& a, const G1Point& b);
G1Point mul_unchecked(const mpz_class& p, const mpz_class& k, const G1Point& a);
GtElement pairing_unchecked(const PairingParams& pp, const G1Point& a, const G1Point& b);
}  // namespace detail

}  // namespace idka
