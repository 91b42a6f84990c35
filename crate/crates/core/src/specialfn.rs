//! Special functions needed by the coverage formulas: the standard normal
//! density and distribution function, interval probabilities of a normal
//! variate, the Student-t two-sided quantile, and the density and mass
//! interval of `W = sqrt(Q / m)` with `Q ~ chi^2_m`.
//!
//! Everything here is a pure function of its arguments.

use crate::error::{Error, Result};

/// 1/√(2π)
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_677_939_946_059_934_4;
/// ½ ln(2π)
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_6;
/// ln √π
const LN_SQRT_PI: f64 = 0.572_364_942_924_700_087_071_713_675_676_5;

/// Default mass discarded when truncating the outer `w` integral.
pub const DEFAULT_W_TAIL_MASS: f64 = 1e-12;

/// Absolute and relative error targets for numerical routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel_err: f64,
    pub abs_err: f64,
}

impl Tolerance {
    pub fn new(rel_err: f64, abs_err: f64) -> Result<Self> {
        if !(rel_err > 0.0 && rel_err.is_finite() && abs_err > 0.0 && abs_err.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerances must be strictly positive, got rel_err={rel_err}, abs_err={abs_err}"
            )));
        }
        Ok(Self { rel_err, abs_err })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel_err: 1e-10,
            abs_err: 1e-8,
        }
    }
}

// ---------------------------------------------------------------------------
// erfc: FreeBSD msun s_erf.c rational approximations.
// ---------------------------------------------------------------------------

const ERX: f64 = 8.45062911510467529297e-01;
const PP0: f64 = 1.28379167095512558561e-01;
const PP1: f64 = -3.25042107247001499370e-01;
const PP2: f64 = -2.84817495755985104766e-02;
const PP3: f64 = -5.77027029648944159157e-03;
const PP4: f64 = -2.37630166566501626084e-05;
const QQ1: f64 = 3.97917223959155352819e-01;
const QQ2: f64 = 6.50222499887672944485e-02;
const QQ3: f64 = 5.08130628187576562776e-03;
const QQ4: f64 = 1.32494738004321644526e-04;
const QQ5: f64 = -3.96022827877536812320e-06;
const PA0: f64 = -2.36211856075265944077e-03;
const PA1: f64 = 4.14856118683748331666e-01;
const PA2: f64 = -3.72207876035701323847e-01;
const PA3: f64 = 3.18346619901161753674e-01;
const PA4: f64 = -1.10894694282396677476e-01;
const PA5: f64 = 3.54783043256182359371e-02;
const PA6: f64 = -2.16637559486879084300e-03;
const QA1: f64 = 1.06420880400844228286e-01;
const QA2: f64 = 5.40397917702171048937e-01;
const QA3: f64 = 7.18286544141962662868e-02;
const QA4: f64 = 1.26171219808761642112e-01;
const QA5: f64 = 1.36370839120290507362e-02;
const QA6: f64 = 1.19844998467991074170e-02;
const RA0: f64 = -9.86494403484714822705e-03;
const RA1: f64 = -6.93858572707181764372e-01;
const RA2: f64 = -1.05586262253232909814e+01;
const RA3: f64 = -6.23753324503260060396e+01;
const RA4: f64 = -1.62396669462573470355e+02;
const RA5: f64 = -1.84605092906711035994e+02;
const RA6: f64 = -8.12874355063065934246e+01;
const RA7: f64 = -9.81432934416914548592e+00;
const SA1: f64 = 1.96512716674392571292e+01;
const SA2: f64 = 1.37657754143519042600e+02;
const SA3: f64 = 4.34565877475229228821e+02;
const SA4: f64 = 6.45387271733267880336e+02;
const SA5: f64 = 4.29008140027567833386e+02;
const SA6: f64 = 1.08635005541779435134e+02;
const SA7: f64 = 6.57024977031928170135e+00;
const SA8: f64 = -6.04244152148580987438e-02;
const RB0: f64 = -9.86494292470009928597e-03;
const RB1: f64 = -7.99283237680523006574e-01;
const RB2: f64 = -1.77579549177547519889e+01;
const RB3: f64 = -1.60636384855821916062e+02;
const RB4: f64 = -6.37566443368389627722e+02;
const RB5: f64 = -1.02509513161107724954e+03;
const RB6: f64 = -4.83519191608651397019e+02;
const SB1: f64 = 3.03380607434824582924e+01;
const SB2: f64 = 3.25792512996573918826e+02;
const SB3: f64 = 1.53672958608443695994e+03;
const SB4: f64 = 3.19985821950859553908e+03;
const SB5: f64 = 2.55305040643316442583e+03;
const SB6: f64 = 4.74528541206955367215e+02;
const SB7: f64 = -2.24409524465858183362e+01;

/// Complementary error function, accurate to about one ulp.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let neg = x < 0.0;
    let ax = x.abs();
    if ax < 0.84375 {
        let t = if ax < 1.387_778_780_781_445_7e-17 {
            ax
        } else {
            let z = ax * ax;
            let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
            let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
            let y = r / s;
            if ax < 0.25 {
                ax + ax * y
            } else {
                0.5 + (ax * y + (ax - 0.5))
            }
        };
        return if neg { 1.0 + t } else { 1.0 - t };
    }
    if ax < 1.25 {
        let s = ax - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if neg { 1.0 + ERX + p / q } else { 1.0 - ERX - p / q };
    }
    if ax < 28.0 {
        let s = 1.0 / (ax * ax);
        let (r, ss) = if ax < 1.0 / 0.35 {
            (
                RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
                1.0 + s
                    * (SA1
                        + s * (SA2
                            + s * (SA3 + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
            )
        } else {
            if neg && ax > 6.0 {
                return 2.0;
            }
            (
                RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
                1.0 + s
                    * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
            )
        };
        // split x so that exp(-x*x) keeps full precision
        let z = f64::from_bits(ax.to_bits() & 0xffff_ffff_0000_0000);
        let e = (-z * z - 0.5625).exp() * ((z - ax) * (z + ax) + r / ss).exp();
        return if neg { 2.0 - e / ax } else { e / ax };
    }
    if neg {
        2.0
    } else {
        0.0
    }
}

/// Standard normal density φ(x).
pub fn norm_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal distribution function Φ(x).
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Φ(y) − Φ(x) for x ≤ y, evaluated on whichever tail avoids cancellation.
fn cdf_diff(x: f64, y: f64) -> f64 {
    let v = if x >= 0.0 {
        norm_cdf(-x) - norm_cdf(-y)
    } else if y <= 0.0 {
        norm_cdf(y) - norm_cdf(x)
    } else {
        1.0 - norm_cdf(x) - norm_cdf(-y)
    };
    v.clamp(0.0, 1.0)
}

/// P(x ≤ Z ≤ y) for Z ~ N(mu, v). A zero variance is a point mass at `mu`.
pub fn psi(x: f64, y: f64, mu: f64, v: f64) -> Result<f64> {
    if x > y {
        return Err(Error::InvalidInput(format!(
            "psi requires x <= y, got x={x}, y={y}"
        )));
    }
    if v < 0.0 {
        return Err(Error::InvalidInput(format!("psi variance must be >= 0, got {v}")));
    }
    Ok(psi_unchecked(x, y, mu, v))
}

#[inline]
pub(crate) fn psi_unchecked(x: f64, y: f64, mu: f64, v: f64) -> f64 {
    if v == 0.0 {
        return if x <= mu && mu <= y { 1.0 } else { 0.0 };
    }
    let sd = v.sqrt();
    cdf_diff((x - mu) / sd, (y - mu) / sd)
}

/// Δ(a, b) = Φ(a + b) − Φ(a − b). Even in `a`.
pub fn delta(a: f64, b: f64) -> f64 {
    let a = a.abs();
    if b >= 0.0 {
        cdf_diff(a - b, a + b)
    } else {
        -cdf_diff(a + b, a - b)
    }
}

/// Two-sided standard normal critical value `z` with P(−z ≤ Z ≤ z) = 1 − alpha.
pub fn z_quantile(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let target = 0.5 * alpha;
    // upper tail Q(z) = Φ(−z) is decreasing; Newton with bisection fallback
    let (mut lo, mut hi) = (0.0_f64, 40.0_f64);
    let mut z = 1.0;
    for _ in 0..200 {
        let f = norm_cdf(-z) - target;
        if f > 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let slope = -norm_pdf(z);
        let mut next = z - f / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - z).abs() <= 4.0 * f64::EPSILON * z.max(1.0) {
            return Ok(next);
        }
        z = next;
    }
    Ok(z)
}

// ---------------------------------------------------------------------------
// Gamma and beta functions
// ---------------------------------------------------------------------------

/// Stirling-series remainder lnΓ(x) − [(x − ½)ln x − x + ½ln 2π], x ≥ 10.
fn stirling_corr(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0))))))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut shift = 0.0;
    let mut y = x;
    let mut prod = 1.0;
    while y < 10.0 {
        prod *= y;
        y += 1.0;
    }
    if prod != 1.0 {
        shift = prod.ln();
    }
    (y - 0.5) * y.ln() - y + HALF_LN_2PI + stirling_corr(y) - shift
}

/// ln B(a, b), kept accurate when one or both arguments are large.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    let (small, big) = if a < b { (a, b) } else { (b, a) };
    if big < 10.0 {
        return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    }
    let sum = small + big;
    // lnΓ(big) − lnΓ(big + small) without cancellation
    let diff = -(big - 0.5) * (small / big).ln_1p() - small * sum.ln()
        + small
        + stirling_corr(big)
        - stirling_corr(sum);
    if small >= 10.0 {
        // both large: Stirling for lnΓ(small) too
        (small - 0.5) * small.ln() - small + HALF_LN_2PI + stirling_corr(small) + diff
    } else {
        ln_gamma(small) + diff
    }
}

/// Regularized incomplete beta I_x(a, b); `y` must equal 1 − x and is passed
/// separately so callers can supply it without cancellation.
pub fn inc_beta(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if y <= 0.0 {
        return 1.0;
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        return 1.0 - inc_beta_cf(b, a, y, x);
    }
    inc_beta_cf(a, b, x, y)
}

/// Continued fraction (modified Lentz) for I_x(a, b), valid for x < (a+1)/(a+b+2).
fn inc_beta_cf(a: f64, b: f64, x: f64, y: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let ln_front = a * x.ln() + b * y.ln() - ln_beta(a, b);
    let front = ln_front.exp() / a;
    if front == 0.0 {
        return 0.0;
    }
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..100_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (front * h).clamp(0.0, 1.0)
}

/// log of x^a e^{−x} / Γ(a), stable for large a.
fn ln_gamma_prefix(a: f64, x: f64) -> f64 {
    if a < 10.0 {
        return a * x.ln() - x - ln_gamma(a);
    }
    let r = (x - a) / a;
    // a ln x − x − lnΓ(a) = −a (r − ln(1+r)) + ½ ln(a / 2π) − corr(a)
    -a * (r - r.ln_1p()) + 0.5 * a.ln() - HALF_LN_2PI - stirling_corr(a)
}

/// Regularized incomplete gamma pair (P(a, x), Q(a, x)).
pub fn inc_gamma(a: f64, x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 1.0);
    }
    let front = ln_gamma_prefix(a, x).exp();
    if x < a + 1.0 {
        // series
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..100_000 {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        let p = (sum * front).clamp(0.0, 1.0);
        (p, 1.0 - p)
    } else {
        // continued fraction for Q
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..100_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        let q = (front * h).clamp(0.0, 1.0);
        (1.0 - q, q)
    }
}

// ---------------------------------------------------------------------------
// Student t
// ---------------------------------------------------------------------------

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

/// P(|T| > t) for T ~ t_m, t ≥ 0.
pub fn t_two_sided_tail(t: f64, m: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    let t2 = t * t;
    let denom = m + t2;
    inc_beta(0.5 * m, 0.5, m / denom, t2 / denom)
}

/// Density of t_m at t.
pub fn t_pdf(t: f64, m: f64) -> f64 {
    (-ln_beta(0.5 * m, 0.5) - 0.5 * m.ln() - 0.5 * (m + 1.0) * (t * t / m).ln_1p()).exp()
}

/// Two-sided Student-t critical value t(m) with P(−t(m) ≤ T ≤ t(m)) = 1 − alpha.
pub fn t_quantile(m: u64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if m < 1 {
        return Err(Error::InvalidInput("degrees of freedom must be >= 1".into()));
    }
    let mf = m as f64;
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while t_two_sided_tail(hi, mf) > alpha {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Numerical(format!("t quantile bracket overflow for m={m}, alpha={alpha}")));
        }
    }
    let mut t = if lo == 0.0 { 0.5 * hi } else { 0.5 * (lo + hi) };
    for _ in 0..400 {
        let f = t_two_sided_tail(t, mf) - alpha;
        if f > 0.0 {
            lo = t;
        } else if f < 0.0 {
            hi = t;
        } else {
            return Ok(t);
        }
        let slope = -2.0 * t_pdf(t, mf);
        let mut next = t - f / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 2.0 * f64::EPSILON * t || hi - lo <= 2.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// W = sqrt(Q / m)
// ---------------------------------------------------------------------------

/// ln f_W(w) for w > 0.
pub fn ln_w_density(w: f64, m: u64) -> f64 {
    let a = 0.5 * m as f64;
    if a < 10.0 {
        return std::f64::consts::LN_2 + a * a.ln() + (2.0 * a - 1.0) * w.ln() - a * w * w - ln_gamma(a);
    }
    let r = w * w - 1.0;
    std::f64::consts::LN_2 + 0.5 * (a.ln() - 2.0 * LN_SQRT_PI - std::f64::consts::LN_2)
        - stirling_corr(a)
        - a * (r - r.ln_1p())
        - w.ln()
}

/// Density of W = sqrt(Q/m), Q ~ chi^2_m.
pub fn w_density(w: f64, m: u64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(Error::InvalidInput(format!("w must be > 0, got {w}")));
    }
    if m < 1 {
        return Err(Error::InvalidInput("degrees of freedom must be >= 1".into()));
    }
    Ok(ln_w_density(w, m).exp())
}

/// (P(W ≤ w), P(W > w)).
pub fn w_cdf(w: f64, m: u64) -> (f64, f64) {
    if w <= 0.0 {
        return (0.0, 1.0);
    }
    let a = 0.5 * m as f64;
    inc_gamma(a, a * w * w)
}

/// Interval carrying all but at most `eps` of the mass of W.
pub fn w_mass_interval(m: u64, eps: f64) -> (f64, f64) {
    let half = 0.5 * eps;
    // lower end: largest w found with P(W < w) <= eps/2
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    if w_cdf(hi, m).0 <= half {
        lo = hi;
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if w_cdf(mid, m).0 <= half {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
    }
    let w_lo = lo;
    // upper end: smallest w found with P(W > w) <= eps/2
    let mut hi = 2.0_f64;
    while w_cdf(hi, m).1 > half {
        hi *= 2.0;
    }
    let mut lo = 1.0_f64.min(hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if w_cdf(mid, m).1 <= half {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    (w_lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Taylor series of Φ, independent of the erfc route.
    fn phi_series(x: f64) -> f64 {
        // Φ(x) = ½ + φ(x) Σ x^(2k+1) / (1·3·…·(2k+1))
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0;
        while term.abs() > 1e-18 * sum.abs() {
            k += 1.0;
            term *= x * x / (2.0 * k + 1.0);
            sum += term;
        }
        0.5 + norm_pdf(x) * sum
    }

    #[test]
    fn pdf_values() {
        assert!((norm_pdf(0.0) - 0.398_942_280_401_432_7).abs() < 1e-16);
        assert_eq!(norm_pdf(1.7), norm_pdf(-1.7));
        let tail = norm_pdf(40.0);
        assert!(tail >= 0.0 && tail < 1e-300 && !tail.is_nan());
    }

    #[test]
    fn cdf_against_series() {
        assert_eq!(norm_cdf(0.0), 0.5);
        // bisection inversion of the series for 0.975
        let (mut lo, mut hi) = (1.0, 3.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if phi_series(mid) < 0.975 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 1.959_963_984_540_054).abs() < 1e-12);
        assert!((norm_cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-12);
        for i in -60..=60 {
            let x = i as f64 / 10.0;
            assert!((norm_cdf(x) - phi_series(x)).abs() < 2e-15, "x={x}");
        }
    }

    #[test]
    fn psi_cases() {
        assert_eq!(psi(0.3, 0.3, 1.0, 2.0).unwrap(), 0.0);
        let z = 1.959_963_984_540_054;
        assert!((psi(-z, z, 0.0, 1.0).unwrap() - 0.95).abs() < 1e-12);
        assert_eq!(psi(-1.0, 1.0, 0.0, 0.0).unwrap(), 1.0);
        assert_eq!(psi(2.0, 3.0, 0.0, 0.0).unwrap(), 0.0);
        assert!(psi(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(psi(0.0, 1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn delta_cases() {
        let z = 1.959_963_984_540_054;
        assert!((delta(0.0, z) - 0.95).abs() < 1e-12);
        assert_eq!(delta(1.3, 0.0), 0.0);
        assert_eq!(delta(0.7, 1.1), delta(-0.7, 1.1));
        assert_eq!(delta(0.7, 1.1), psi(0.7 - 1.1, 0.7 + 1.1, 0.0, 1.0).unwrap());
    }

    #[test]
    fn z_quantile_matches() {
        assert!((z_quantile(0.05).unwrap() - 1.959_963_984_540_054).abs() < 1e-13);
        assert!(z_quantile(0.0).is_err());
    }

    #[test]
    fn ln_gamma_values() {
        assert!((ln_gamma(0.5) - LN_SQRT_PI).abs() < 1e-14);
        assert!((ln_gamma(1.0)).abs() < 1e-14);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-14);
        assert!((ln_gamma(20.0) - 121_645_100_408_832_000f64.ln()).abs() < 1e-13);
        // ln_beta consistency in the large-argument branches
        for &(a, b) in &[(12.5, 0.5), (40.0, 25.0), (5e4, 0.5), (3.0, 17.0)] {
            let direct = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
            assert!((ln_beta(a, b) - direct).abs() < 1e-9 * direct.abs().max(1.0), "{a} {b}");
        }
    }

    #[test]
    fn t_one_df_closed_form() {
        // t_1 is Cauchy: P(|T| > t) = 1 − (2/π) atan t
        for &t in &[0.1, 1.0, 3.0, 12.7, 100.0] {
            let exact = 1.0 - 2.0 / std::f64::consts::PI * f64::atan(t);
            assert!((t_two_sided_tail(t, 1.0) - exact).abs() < 1e-14, "t={t}");
        }
        assert!((t_quantile(1, 0.05).unwrap() - 12.706_204_736).abs() < 1e-6);
    }

    #[test]
    fn t_quantile_errors_and_limit() {
        assert!(t_quantile(0, 0.05).is_err());
        assert!(t_quantile(5, 1.0).is_err());
        assert!(t_quantile(5, -0.1).is_err());
        assert!((t_quantile(1_000_000, 0.05).unwrap() - 1.959_963_984_540_054).abs() < 1e-3);
    }

    #[test]
    fn w_interval_contains_mass() {
        let (lo, hi) = w_mass_interval(5, 1e-12);
        assert!(lo >= 0.0 && lo < 0.1 && hi > 3.0);
        let below = w_cdf(lo, 5).0;
        let above = w_cdf(hi, 5).1;
        assert!(below + above <= 1e-12 * (1.0 + 1e-6));
    }

    #[test]
    fn inc_gamma_exponential() {
        // a = 1 is the exponential law
        for &x in &[0.1, 1.0, 2.5, 10.0] {
            let (p, q) = inc_gamma(1.0, x);
            assert!((q - (-x as f64).exp()).abs() < 1e-15);
            assert!((p + q - 1.0).abs() < 1e-15);
        }
    }
}
