//! Factorization of squarefree monic polynomials over prime fields, and
//! Hensel lifting of the factors to prime-power moduli.
//!
//! Factorization runs distinct-degree splitting followed by equal-degree
//! splitting. The equal-degree stage is probabilistic; its random choices
//! come from a stream cipher seeded deterministically from the modulus, the
//! polynomial, and a caller-supplied seed, so a fixed input always factors
//! the same way. Factors are returned in a canonical order (degree, then the
//! little-endian coefficient tuple) independent of the random path taken.
//!
//! Lifting is quadratic: each step doubles the exponent and repairs the
//! Bezout cofactors, so reaching p^k costs O(log k) steps. Multiple factors
//! are lifted by a recursive two-way split of the factor list.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fp::Fp;
use crate::{FpPoly, IntPoly};

/// p^k as a big integer.
#[must_use]
pub fn prime_power(p: u64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    let pb = BigInt::from(p);
    for _ in 0..k {
        acc *= &pb;
    }
    acc
}

/// Reduce integer coefficients into the prime field.
#[must_use]
pub fn reduce_mod_p(m: &IntPoly, p: u64) -> FpPoly {
    m.map(|c| Fp::from_bigint(c, p))
}

fn fp_to_int(f: &FpPoly) -> IntPoly {
    f.map(|c| BigInt::from(c.value()))
}

/// Coefficients into [0, q), trailing zeros trimmed.
fn reduce_mod(f: &IntPoly, q: &BigInt) -> IntPoly {
    f.map(|c| c.mod_floor(q))
}

fn seed_stream(p: u64, m: &FpPoly, seed: u64) -> ChaCha8Rng {
    // FNV-1a fold of the inputs; only determinism matters here.
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    let mut eat = |v: u64| {
        h ^= v;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    eat(p);
    for c in m.coeffs() {
        eat(c.value());
    }
    eat(seed);
    ChaCha8Rng::seed_from_u64(h)
}

fn canonical_key(f: &FpPoly) -> (usize, Vec<u64>) {
    (
        f.deg().unwrap_or(0),
        f.coeffs().iter().map(Fp::value).collect(),
    )
}

/// Factor a monic squarefree polynomial over F_p into monic irreducibles,
/// canonically ordered. The caller guarantees squarefreeness (the pipeline
/// rejects primes dividing the discriminant before reaching this point).
#[must_use]
pub fn factor_squarefree_monic(m: &FpPoly, p: u64, seed: u64) -> Vec<FpPoly> {
    assert!(m.is_monic(), "factorization target must be monic");
    let mut rng = seed_stream(p, m, seed);
    let mut out = Vec::new();
    for (product, d) in distinct_degree(m.clone(), p) {
        split_equal_degree(product, d, p, &mut rng, &mut out);
    }
    out.sort_by_key(canonical_key);
    out
}

/// Distinct-degree stage: returns (product of all irreducible factors of
/// degree d, d) pairs.
fn distinct_degree(mut f: FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let x = FpPoly::x();
    let mut h = x.rem_monic(&f);
    let mut d = 0usize;
    while f.deg().is_some_and(|df| df > 0) {
        d += 1;
        let df = f.deg().expect("nonconstant");
        if 2 * d > df {
            out.push((f.clone(), df));
            break;
        }
        h = h.powmod_monic(&BigUint::from(p), &f);
        let g = h.sub(&x).gcd(&f);
        if g.deg().is_some_and(|dg| dg > 0) {
            f = f.divrem(&g).0;
            h = h.rem_monic(&f);
            out.push((g, d));
        }
    }
    out
}

/// Equal-degree stage: split a product of distinct irreducibles of known
/// common degree d. Odd p uses power residues; p = 2 uses trace sums.
fn split_equal_degree(g: FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let dg = g.deg().expect("nonconstant");
    if dg == d {
        out.push(g);
        return;
    }
    loop {
        let a = random_poly(dg, p, rng);
        let candidate = if p == 2 {
            // Trace map T(a) = a + a^2 + ... + a^(2^(d-1)).
            let mut term = a.rem_monic(&g);
            let mut trace = term.clone();
            for _ in 1..d {
                term = term.mulmod_monic(&term, &g);
                trace = trace.add(&term);
            }
            trace.gcd(&g)
        } else {
            let mut pd = BigUint::one();
            for _ in 0..d {
                pd *= BigUint::from(p);
            }
            let exp = (pd - BigUint::one()) / BigUint::from(2u32);
            let b = a.powmod_monic(&exp, &g);
            b.sub(&FpPoly::one()).gcd(&g)
        };
        if let Some(dc) = candidate.deg() {
            if dc > 0 && dc < dg {
                let rest = g.divrem(&candidate).0;
                split_equal_degree(candidate, d, p, rng, out);
                split_equal_degree(rest, d, p, rng, out);
                return;
            }
        }
    }
}

fn random_poly(below_deg: usize, p: u64, rng: &mut ChaCha8Rng) -> FpPoly {
    let coeffs = (0..below_deg)
        .map(|_| Fp::new(rng.gen_range(0..p), p))
        .collect();
    FpPoly::from_coeffs(coeffs)
}

/// Lift a mod-p factorization of a monic polynomial to mod p^k. Factors are
/// returned in the input order; each lifted factor is monic, reduced mod
/// p^k, and congruent to its mod-p original.
#[must_use]
pub fn hensel_lift(m: &IntPoly, factors_p: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    assert!(k >= 1);
    let q = prime_power(p, k);
    let target = reduce_mod(m, &q);
    let lifted = lift_node(&target, factors_p, p, k);
    // The lift is a theorem, not an input property, so check it hard.
    let mut prod = IntPoly::one();
    for f in &lifted {
        prod = reduce_mod(&prod.mul(f), &q);
    }
    assert_eq!(
        prod, target,
        "lifted factors must multiply back to the input"
    );
    for (f, f0) in lifted.iter().zip(factors_p) {
        assert_eq!(
            reduce_mod_p(f, p),
            *f0,
            "lifted factor must reduce to its original"
        );
    }
    lifted
}

fn lift_node(f: &IntPoly, parts: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    if parts.len() == 1 {
        return vec![f.clone()];
    }
    let mid = parts.len() / 2;
    let g0 = parts[..mid].iter().fold(FpPoly::one(), |acc, q| acc.mul(q));
    let h0 = parts[mid..].iter().fold(FpPoly::one(), |acc, q| acc.mul(q));
    let (one, s0, t0) = g0.xgcd(&h0);
    assert_eq!(one, FpPoly::one(), "factor halves must be coprime mod p");
    let (g, h) = pair_lift(f, &g0, &h0, &s0, &t0, p, k);
    let mut out = lift_node(&g, &parts[..mid], p, k);
    out.extend(lift_node(&h, &parts[mid..], p, k));
    out
}

/// Quadratic lift of f = g*h from mod p to mod p^k, maintaining Bezout
/// cofactors s*g + t*h = 1 along the way.
fn pair_lift(
    f: &IntPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    s0: &FpPoly,
    t0: &FpPoly,
    p: u64,
    k: u32,
) -> (IntPoly, IntPoly) {
    let mut g = fp_to_int(g0);
    let mut h = fp_to_int(h0);
    let mut s = fp_to_int(s0);
    let mut t = fp_to_int(t0);
    let mut cur = 1u32;
    while cur < k {
        let next = (2 * cur).min(k);
        let q = prime_power(p, next);
        let e = reduce_mod(&f.sub(&g.mul(&h)), &q);
        let (w, dg) = reduce_mod(&t.mul(&e), &q).divrem_monic(&g);
        let dg = reduce_mod(&dg, &q);
        let dh = reduce_mod(&s.mul(&e).add(&h.mul(&w)), &q);
        assert!(
            dh.deg() < h.deg(),
            "cofactor correction must not raise the degree"
        );
        g = reduce_mod(&g.add(&dg), &q);
        h = reduce_mod(&h.add(&dh), &q);
        if next < k {
            let d = reduce_mod(&s.mul(&g).add(&t.mul(&h)).sub(&IntPoly::one()), &q);
            let (wp, ds) = reduce_mod(&d.mul(&s).neg(), &q).divrem_monic(&h);
            s = reduce_mod(&s.add(&ds), &q);
            t = reduce_mod(&t.sub(&d.mul(&t)).add(&wp.mul(&g)), &q);
        }
        cur = next;
    }
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fpoly(cs: &[u64], p: u64) -> FpPoly {
        FpPoly::from_coeffs(cs.iter().map(|&c| Fp::new(c, p)).collect())
    }

    fn ipoly(cs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn coeff_vec(f: &FpPoly) -> Vec<u64> {
        f.coeffs().iter().map(Fp::value).collect()
    }

    #[test]
    fn gaussian_modulus_split_and_inert() {
        let split = factor_squarefree_monic(&fpoly(&[1, 0, 1], 5), 5, 0);
        assert_eq!(split.len(), 2);
        assert_eq!(coeff_vec(&split[0]), vec![2, 1]);
        assert_eq!(coeff_vec(&split[1]), vec![3, 1]);
        let inert = factor_squarefree_monic(&fpoly(&[1, 0, 1], 3), 3, 0);
        assert_eq!(inert.len(), 1);
        assert_eq!(coeff_vec(&inert[0]), vec![1, 0, 1]);
    }

    #[test]
    fn biquadratic_splits_into_quadratics() {
        // x^4 - 10x^2 + 1 mod 5 = (x^2 + 2)(x^2 + 3).
        let fs = factor_squarefree_monic(&fpoly(&[1, 0, 0, 0, 1], 5), 5, 0);
        assert_eq!(coeff_vec(&fs[0]), vec![2, 0, 1]);
        assert_eq!(coeff_vec(&fs[1]), vec![3, 0, 1]);
        // Mod 7 it is also a product of two quadratics.
        let m7 = fpoly(&[1, 0, 4, 0, 1], 7);
        let fs = factor_squarefree_monic(&m7, 7, 0);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| f.deg() == Some(2)));
        assert_eq!(fs[0].mul(&fs[1]), m7);
    }

    #[test]
    fn characteristic_two_paths() {
        let linear = factor_squarefree_monic(&fpoly(&[0, 1, 1], 2), 2, 0);
        assert_eq!(coeff_vec(&linear[0]), vec![0, 1]);
        assert_eq!(coeff_vec(&linear[1]), vec![1, 1]);
        // Product of the two irreducible cubics mod 2.
        let m = fpoly(&[1, 1, 1, 1, 1, 1, 1], 2);
        let fs = factor_squarefree_monic(&m, 2, 0);
        assert_eq!(coeff_vec(&fs[0]), vec![1, 0, 1, 1]);
        assert_eq!(coeff_vec(&fs[1]), vec![1, 1, 0, 1]);
    }

    #[test]
    fn output_is_seed_independent() {
        let m = fpoly(&[0, 6, 0, 1], 7);
        let a = factor_squarefree_monic(&m, 7, 1);
        let b = factor_squarefree_monic(&m, 7, 99);
        assert_eq!(a, b);
        let keys: Vec<_> = a.iter().map(coeff_vec).collect();
        assert_eq!(keys, vec![vec![0, 1], vec![1, 1], vec![6, 1]]);
    }

    #[test]
    fn lift_gaussian_to_mod_25() {
        let m = ipoly(&[1, 0, 1]);
        let fs = factor_squarefree_monic(&reduce_mod_p(&m, 5), 5, 0);
        let lifted = hensel_lift(&m, &fs, 5, 2);
        // Roots of x^2 + 1 mod 25 are 7 and 18; x + 2 (root 3) lifts to
        // x + 7 (root 18), x + 3 (root 2) lifts to x + 18 (root 7).
        assert_eq!(lifted[0], ipoly(&[7, 1]));
        assert_eq!(lifted[1], ipoly(&[18, 1]));
    }

    #[test]
    fn lift_three_factors() {
        let m = ipoly(&[0, -1, 0, 1]);
        let fs = factor_squarefree_monic(&reduce_mod_p(&m, 7), 7, 0);
        assert_eq!(fs.len(), 3);
        let lifted = hensel_lift(&m, &fs, 7, 4);
        // Integer roots 0, -1, 1 lift exactly.
        assert_eq!(lifted[0], ipoly(&[0, 1]));
        assert_eq!(lifted[1], ipoly(&[1, 1]));
        assert_eq!(lifted[2], ipoly(&[2400, 1]));
    }

    #[test]
    fn lift_quadratic_factors_high_power() {
        let m = ipoly(&[1, 0, -10, 0, 1]);
        let fs = factor_squarefree_monic(&reduce_mod_p(&m, 5), 5, 0);
        let lifted = hensel_lift(&m, &fs, 5, 8);
        let q = prime_power(5, 8);
        let prod = reduce_mod(&lifted[0].mul(&lifted[1]), &q);
        assert_eq!(prod, reduce_mod(&m, &q));
        for (f, f0) in lifted.iter().zip(&fs) {
            assert!(f.is_monic());
            assert_eq!(reduce_mod_p(f, 5), *f0);
        }
    }
}
