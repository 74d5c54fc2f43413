#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prism/zmod.hpp"

// Coefficient rings O = Z[x]/(f(x), p^N) with a chosen Frobenius
// endomorphism sigma and a chosen uniformizer pi.  Models W(k) (x) O_E at
// p-adic precision N: q is the residue cardinality of O_E, e the
// ramification index (pi^e = unit * p).

namespace prism {

struct ring_error : std::runtime_error {
    std::string kind;
    ring_error(std::string kind_, const std::string& what)
        : std::runtime_error(kind_ + ": " + what), kind(std::move(kind_)) {}
};

class CoeffRing;

// Element of a CoeffRing: residues of 1, x, ..., x^(d-1).
struct Coeff {
    std::vector<std::uint64_t> c;

    bool operator==(const Coeff& o) const { return c == o.c; }
};

class CoeffRing {
  public:
    // Validates every construction invariant and throws ring_error with the
    // name of the first one that fails.
    CoeffRing(std::uint64_t p, std::vector<std::int64_t> f, unsigned N,
              const Coeff& pi, const Coeff& sigma_x, std::uint64_t q);

    // Stock constructors.
    static std::shared_ptr<const CoeffRing> zp(std::uint64_t p, unsigned N);
    // W(F_{p^deg}) with O_E = Z_p; f must be a monic lift of an irreducible
    // polynomial over F_p and sigma_x a lift of the p-power Frobenius.
    static std::shared_ptr<const CoeffRing> unramified(std::uint64_t p, unsigned N,
                                                       std::vector<std::int64_t> f,
                                                       const Coeff& sigma_x);
    // O_E = Z_p[pi]/(f(pi)) totally ramified (f Eisenstein), q = p, sigma = id.
    static std::shared_ptr<const CoeffRing> eisenstein(std::uint64_t p, unsigned N,
                                                       std::vector<std::int64_t> f);

    std::uint64_t p() const { return p_; }
    unsigned N() const { return N_; }
    std::uint64_t q() const { return q_; }
    unsigned e() const { return e_; }
    unsigned deg() const { return d_; }
    std::uint64_t modulus() const { return pN_; }
    const std::vector<std::int64_t>& f() const { return f_; }
    const Coeff& pi() const { return pi_; }
    const Coeff& sigma_x() const { return sigma_x_; }
    // The exact element p/pi (satisfies pi * p_over_pi == p on the nose).
    const Coeff& p_over_pi() const { return p_over_pi_; }
    // Maximum certified pi-adic precision representable: e*N.
    unsigned pi_prec_cap() const { return e_ * N_; }

    Coeff zero() const;
    Coeff one() const;
    Coeff from_int(std::int64_t v) const;
    // Coefficients are taken mod p^N; index i multiplies x^i.
    Coeff from_poly(const std::vector<std::int64_t>& coeffs) const;

    Coeff add(const Coeff& a, const Coeff& b) const;
    Coeff sub(const Coeff& a, const Coeff& b) const;
    Coeff neg(const Coeff& a) const;
    Coeff mul(const Coeff& a, const Coeff& b) const;
    Coeff smul(std::uint64_t s, const Coeff& a) const;
    Coeff pow(const Coeff& a, std::uint64_t ebits) const;
    bool is_zero(const Coeff& a) const;
    bool is_unit(const Coeff& a) const;
    // Throws if not a unit.
    Coeff inverse(const Coeff& a) const;
    Coeff apply_sigma(const Coeff& a) const;
    // Canonical solution of pi * z = a, if a is divisible by pi.
    std::optional<Coeff> divide_by_pi(const Coeff& a) const;
    // delta(a) = (sigma(a) - a^q)/pi; always divisible.  The caller is
    // responsible for decrementing the certified precision by one pi-digit.
    Coeff delta(const Coeff& a) const;

    // True iff a - b lies in (pi^k).
    bool congruent_mod_pi_pow(const Coeff& a, const Coeff& b, unsigned k) const;
    // Membership matrix of the ideal (pi^k) as a Z/p^N-span.
    const HowellForm& pi_pow_span(unsigned k) const;

    // binom(q, h)/p for 0 < h < q, as a plain integer.
    std::uint64_t binom_q_over_p(unsigned h) const;

    std::string describe() const;

    // Maps this ring into `target` sending x to `image_of_x`; checked to be
    // a sigma- and pi-compatible ring map (unramified coefficient
    // extensions).  Throws ring_error on failure.
    struct Embedding {
        const CoeffRing* src;
        const CoeffRing* tgt;
        Coeff x_image;
        Coeff apply(const Coeff& a) const;
    };
    Embedding embed_into(const CoeffRing& target, const Coeff& image_of_x) const;

    // Same ring structure at a different stored precision (guard digits).
    std::shared_ptr<const CoeffRing> at_precision(unsigned N2) const;
    // Reduce an element of a higher-precision copy of this ring into this
    // ring (entrywise mod p^N).
    Coeff reduce_from(const CoeffRing& higher, const Coeff& a) const;

  private:
    std::uint64_t p_;
    unsigned N_;
    std::uint64_t pN_;
    std::vector<std::int64_t> f_;
    unsigned d_;
    Coeff pi_;
    Coeff sigma_x_;
    std::uint64_t q_;
    unsigned e_ = 1;
    Coeff p_over_pi_;
    std::vector<Coeff> xpow_;        // x^k mod f for k in [0, 2d-2]
    std::vector<Coeff> sigma_pows_;  // sigma(x)^j
    mutable std::vector<std::optional<HowellForm>> pi_spans_;
    std::vector<std::uint64_t> binom_over_p_;

    void validate();
};

using CoeffRingPtr = std::shared_ptr<const CoeffRing>;

}  // namespace prism
