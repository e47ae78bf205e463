//! Perron-Frobenius eigendata of primitive integer matrices.
//!
//! The dominant eigenvalue is isolated as a root of an irreducible factor of the
//! characteristic polynomial, starting from a Collatz-Wielandt bracket produced by
//! exact integer power iteration. The eigenvector comes from a column of the
//! adjugate of `xI - A`, reduced modulo the minimal polynomial, so its entries are
//! polynomials in the eigenvalue with rational coefficients. This also yields the
//! complete space of rational linear relations among the entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::certified::{ceil_dyadic, floor_dyadic, pow2, CertifiedReal};
use super::linalg::{rational_kernel, IntMatrix, RowSpace};
use super::poly::{
    adjugate_column, char_poly, count_roots, factor_int_poly, squarefree_part, sturm_sequence,
    IntPoly,
};
use crate::error::{Error, Result};

/// Eigendata of a primitive matrix.
#[derive(Clone, Debug)]
pub struct PerronData {
    pub theta: CertifiedReal,
    /// Right eigenvector normalized to entry sum 1.
    pub vector: Vec<CertifiedReal>,
    pub char_poly: IntPoly,
    /// Minimal polynomial of the eigenvalue.
    pub minimal_poly: IntPoly,
    /// All rational vectors `c` with `c . vector = 0`.
    pub relations: RowSpace,
    /// Entries of the unnormalized eigenvector as polynomials in the eigenvalue.
    pub vector_polys: Vec<IntPoly>,
}

/// Isolating dyadic interval `[lo/2^k, hi/2^k]` of a simple root of `g`.
#[derive(Clone, Debug)]
struct Isolated {
    g: IntPoly,
    lo: BigInt,
    hi: BigInt,
    k: u32,
}

impl Isolated {
    /// Bisect until the interval has width at most `2^-bits`.
    fn narrow(&self, bits: u32) -> (BigRational, BigRational) {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let mut k = self.k;
        let s_lo = self.g.sign_at_dyadic(&lo, k);
        if s_lo == 0 {
            let x = BigRational::new(lo, pow2(k));
            return (x.clone(), x);
        }
        loop {
            let w = &hi - &lo;
            let width_ok = if k >= bits {
                w <= pow2(k - bits)
            } else {
                (w << (bits - k)) <= BigInt::one()
            };
            if width_ok {
                break;
            }
            lo <<= 1;
            hi <<= 1;
            k += 1;
            let mid = (&lo + &hi) >> 1;
            let s = self.g.sign_at_dyadic(&mid, k);
            if s == 0 {
                let x = BigRational::new(mid, pow2(k));
                return (x.clone(), x);
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (BigRational::new(lo, pow2(k)), BigRational::new(hi, pow2(k)))
    }
}

/// Interval enclosure of `p(x)` for `x` in `[l, h]` with `l >= 0`.
fn eval_on_positive_interval(p: &IntPoly, l: &BigRational, h: &BigRational) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    let mut pl = BigRational::one();
    let mut ph = BigRational::one();
    for c in p.coeffs() {
        let cq = BigRational::from_integer(c.clone());
        if c.is_negative() {
            lo += &cq * &ph;
            hi += &cq * &pl;
        } else {
            lo += &cq * &pl;
            hi += &cq * &ph;
        }
        pl *= l;
        ph *= h;
    }
    (lo, hi)
}

fn div_interval(
    (al, ah): (BigRational, BigRational),
    (bl, bh): (BigRational, BigRational),
) -> (BigRational, BigRational) {
    // Denominator interval is strictly positive or strictly negative.
    let c = [&al / &bl, &al / &bh, &ah / &bl, &ah / &bh];
    let lo = c.iter().min().unwrap().clone();
    let hi = c.iter().max().unwrap().clone();
    (lo, hi)
}

fn component_generator(
    iso: Isolated,
    num: IntPoly,
    den: IntPoly,
) -> impl Fn(u32) -> (BigRational, BigRational) + Send + Sync + 'static {
    move |bits| {
        let target = BigRational::new(BigInt::one(), pow2(bits));
        let mut guard = 16u32;
        loop {
            let (l, h) = iso.narrow(bits + guard);
            let n = eval_on_positive_interval(&num, &l, &h);
            let d = eval_on_positive_interval(&den, &l, &h);
            let ok_den = d.0.is_positive() || d.1.is_negative();
            if ok_den {
                let r = div_interval(n, d);
                if &r.1 - &r.0 <= target || guard > 4 * bits + 256 {
                    return r;
                }
            }
            guard += 32;
        }
    }
}

/// Collatz-Wielandt bracket and the irreducible factor holding the dominant root.
fn isolate_dominant(a: &IntMatrix, factors: &[IntPoly], sqf: &IntPoly) -> Result<Isolated> {
    let n = a.dim();
    let sturm = sturm_sequence(sqf);
    let mut v: Vec<BigInt> = vec![BigInt::one(); n];
    let k = 64u32;
    for _ in 0..10_000 {
        let w: Vec<BigInt> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(a.get(i, j)) * &v[j]).sum())
            .collect();
        let ratios: Vec<BigRational> = (0..n)
            .map(|i| BigRational::new(w[i].clone(), v[i].clone()))
            .collect();
        let lo = ratios.iter().min().unwrap().clone();
        let hi = ratios.iter().max().unwrap().clone();
        let lo_d = floor_dyadic(&lo, k) - BigRational::new(BigInt::one(), pow2(k));
        let hi_d = ceil_dyadic(&hi, k);
        if count_roots(&sturm, &lo_d, &hi_d) == 1 {
            for g in factors {
                if g.degree() == 0 {
                    continue;
                }
                let sg = sturm_sequence(g);
                if count_roots(&sg, &lo_d, &hi_d) == 1 {
                    let lo_n = (lo_d * BigRational::from_integer(pow2(k))).to_integer();
                    let hi_n = (hi_d * BigRational::from_integer(pow2(k))).to_integer();
                    return Ok(Isolated {
                        g: g.clone(),
                        lo: lo_n,
                        hi: hi_n,
                        k,
                    });
                }
            }
        }
        // Keep the iterate small: divide by the gcd of its entries.
        let g = w.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
        v = w.into_iter().map(|x| x / &g).collect();
    }
    Err(Error::NotFound("could not isolate the dominant eigenvalue".into()))
}

/// Dominant eigenvalue and normalized positive eigenvector of a primitive matrix.
pub fn perron(a: &IntMatrix, target_bits: u32) -> Result<PerronData> {
    if !a.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let n = a.dim();
    let cp = char_poly(a);
    let factors = factor_int_poly(&cp)?;
    let sqf = squarefree_part(&cp);
    let iso = isolate_dominant(a, &factors, &sqf)?;
    let g = iso.g.clone();
    let rational_root = if g.degree() == 1 {
        Some(BigRational::new(-g.coeff(0), g.coeff(1)))
    } else {
        None
    };
    let theta = match &rational_root {
        Some(r) => CertifiedReal::exact(r.clone()),
        None => {
            let iso = iso.clone();
            CertifiedReal::from_generator(move |b| iso.narrow(b), target_bits)
        }
    };

    let mut polys = None;
    for j in 0..n {
        let col: Vec<IntPoly> = adjugate_column(a, j).iter().map(|p| p.rem_monic(&g)).collect();
        if col.iter().any(|p| !p.is_zero()) {
            polys = Some(col);
            break;
        }
    }
    let polys = polys.expect("adjugate of xI - A has a nonzero column at a simple root");
    let den = polys.iter().fold(IntPoly::zero(), |acc, p| acc.add(p));
    let vector: Vec<CertifiedReal> = polys
        .iter()
        .map(|p| match &rational_root {
            Some(r) => CertifiedReal::exact(p.eval_rat(r) / den.eval_rat(r)),
            None => CertifiedReal::from_generator(
                component_generator(iso.clone(), p.clone(), den.clone()),
                target_bits,
            ),
        })
        .collect();

    let d = g.degree();
    let cols: Vec<Vec<BigRational>> = (0..d)
        .map(|t| {
            polys
                .iter()
                .map(|p| BigRational::from_integer(p.coeff(t)))
                .collect()
        })
        .collect();
    let relations = RowSpace::span(n, &rational_kernel(&cols, n));

    Ok(PerronData {
        theta,
        vector,
        char_poly: cp,
        minimal_poly: g,
        relations,
        vector_polys: polys,
    })
}

/// `(theta, v)` only.
pub fn perron_eigen(a: &IntMatrix, target_bits: u32) -> Result<(CertifiedReal, Vec<CertifiedReal>)> {
    let p = perron(a, target_bits)?;
    Ok((p.theta, p.vector))
}

/// Enclosures of the components of `A v - theta v`.
pub fn residual(a: &IntMatrix, theta: &CertifiedReal, v: &[CertifiedReal]) -> Vec<CertifiedReal> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            let terms: Vec<(BigInt, CertifiedReal)> = (0..n)
                .map(|j| (BigInt::from(a.get(i, j)), v[j].clone()))
                .collect();
            CertifiedReal::linear_combination(&terms).sub(&theta.mul(&v[i]))
        })
        .collect()
}
