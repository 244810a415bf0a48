//! Standard normal distribution functions: pdf, cdf, inverse cdf.
//!
//! The cdf is computed through the regularized upper incomplete gamma
//! function Q(a, x) at a = 1/2, using the classic series / continued-fraction
//! split (Numerical Recipes §6.2): Φ(x) = ½·erfc(−x/√2) and
//! erfc(z) = Q(1/2, z²) for z ≥ 0. Both branches iterate to machine epsilon,
//! and the continued fraction keeps *relative* accuracy deep into the tail,
//! which the quantile refinement and the chi-square tail both rely on.
//!
//! The inverse cdf starts from Peter Acklam's rational approximation
//! (relative error < 1.2e−9 over (0,1)) and polishes with Halley steps using
//! the cdf above, giving full double accuracy away from the extreme
//! denormal-pdf region.
//!
//! Accuracy: |cdf error| < 1e−14 absolute (and ~1e−15 relative in the lower
//! tail), comfortably inside the 1e−12 bound the option pricer documents;
//! the test suite pins both against 50-digit reference values and against
//! the quantile table used for VaR.

use crate::scalar::Scalar;

/// ln √(2π), the Gaussian log-likelihood constant.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_78;

/// ln Γ(1/2) = ln √π.
const LN_GAMMA_HALF: f64 = 0.572_364_942_924_700_1;

const MAX_ITERS: usize = 600;

/// Standard normal density.
#[inline]
pub fn pdf<F: Scalar>(x: F) -> F {
    let half = F::cst(0.5);
    (-half * x * x - F::cst(LN_SQRT_2PI)).exp()
}

/// Standard normal cumulative distribution function.
pub fn cdf<F: Scalar>(x: F) -> F {
    if x.is_nan() {
        return x;
    }
    let half = F::cst(0.5);
    let z = x.abs() / F::cst(std::f64::consts::SQRT_2);
    let tail = half * erfc_positive(z);
    if x < F::zero() {
        tail
    } else {
        F::one() - tail
    }
}

/// Upper tail of chi-square with one degree of freedom,
/// P(X > x) = erfc(√(x/2)) = 2·Φ(−√x).
pub fn chi2_sf_1df<F: Scalar>(x: F) -> F {
    if x <= F::zero() {
        return F::one();
    }
    F::cst(2.0) * cdf(-x.sqrt())
}

/// erfc(z) for z ≥ 0 via Q(1/2, z²).
fn erfc_positive<F: Scalar>(z: F) -> F {
    debug_assert!(z >= F::zero());
    let x = z * z;
    let a = F::cst(0.5);
    if x < a + F::one() {
        // erfc = 1 − P(a, x); the series converges fast on this side
        F::one() - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    }
}

/// Series expansion of the regularized lower incomplete gamma P(a, x).
fn gamma_p_series<F: Scalar>(a: F, x: F) -> F {
    if x == F::zero() {
        return F::zero();
    }
    let mut ap = a;
    let mut del = F::one() / a;
    let mut sum = del;
    for _ in 0..MAX_ITERS {
        ap = ap + F::one();
        del = del * x / ap;
        sum = sum + del;
        if del.abs() < sum.abs() * F::epsilon() {
            break;
        }
    }
    sum * (-x + a * x.ln() - F::cst(LN_GAMMA_HALF)).exp()
}

/// Modified-Lentz continued fraction for the regularized upper incomplete
/// gamma Q(a, x), valid for x ≥ a + 1.
fn gamma_q_cf<F: Scalar>(a: F, x: F) -> F {
    let fpmin = F::min_positive_value() / F::epsilon();
    let mut b = x + F::one() - a;
    let mut c = F::one() / fpmin;
    let mut d = F::one() / b;
    let mut h = d;
    for i in 1..=MAX_ITERS {
        let an = -F::of_usize(i) * (F::of_usize(i) - a);
        b = b + F::cst(2.0);
        d = an * d + b;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b + an / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = F::one() / d;
        let delta = d * c;
        h = h * delta;
        if (delta - F::one()).abs() < F::epsilon() {
            break;
        }
    }
    let log_scale = -x + a * x.ln() - F::cst(LN_GAMMA_HALF);
    if log_scale < F::cst(-745.0) {
        // would underflow even as a subnormal; the tail is exactly 0 here
        return F::zero();
    }
    log_scale.exp() * h
}

/// Standard normal quantile (inverse cdf) on the open interval (0, 1).
///
/// Returns `None` for p outside (0, 1) or NaN.
pub fn inv_cdf<F: Scalar>(p: F) -> Option<F> {
    if !(p > F::zero() && p < F::one()) {
        return None;
    }
    let mut x = acklam(p);
    // Halley polish: u = (Φ(x) − p)/φ(x); x ← x − u / (1 + x·u/2).
    // Cubic convergence, so two passes take the 1e−9 seed to full precision;
    // the loop exits early once the correction is below roundoff.
    for _ in 0..3 {
        let dens = pdf(x);
        if dens <= F::min_positive_value() {
            break; // denormal-pdf region: keep the rational approximation
        }
        let u = (cdf(x) - p) / dens;
        let step = u / (F::one() + x * u * F::cst(0.5));
        x = x - step;
        if step.abs() <= F::cst(1e-14) * (F::one() + x.abs()) {
            break;
        }
    }
    Some(x)
}

/// Acklam's rational approximation to the normal quantile.
fn acklam<F: Scalar>(p: F) -> F {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    let p_low = F::cst(P_LOW);
    let p_high = F::one() - p_low;
    if p < p_low {
        let q = (-F::cst(2.0) * p.ln()).sqrt();
        poly5(&C, q) / poly4_monic(&D, q)
    } else if p <= p_high {
        let q = p - F::cst(0.5);
        let r = q * q;
        q * poly5(&A, r) / poly5_monic(&B, r)
    } else {
        let q = (-F::cst(2.0) * (F::one() - p).ln()).sqrt();
        -poly5(&C, q) / poly4_monic(&D, q)
    }
}

#[inline]
fn poly5<F: Scalar>(c: &[f64; 6], x: F) -> F {
    c.iter().fold(F::zero(), |acc, &k| acc * x + F::cst(k))
}

#[inline]
fn poly5_monic<F: Scalar>(c: &[f64; 5], x: F) -> F {
    c.iter().fold(F::zero(), |acc, &k| acc * x + F::cst(k)) * x + F::one()
}

#[inline]
fn poly4_monic<F: Scalar>(c: &[f64; 4], x: F) -> F {
    c.iter().fold(F::zero(), |acc, &k| acc * x + F::cst(k)) * x + F::one()
}
