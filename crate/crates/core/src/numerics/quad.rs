//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals,
//! plus an iterated 2-D rule for regions `{x0 <= x <= x1, 0 <= y <= g(x)}`.

use std::collections::BinaryHeap;

use super::NumericsError;

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights. Standard QUADPACK QK15 constants.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_69,
    0.279_705_391_489_276_67,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Change of variables used to fold `[a, inf)` onto `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SemiInfiniteMap {
    /// `r = a + t / (1 - t)`; handles polynomially decaying tails.
    #[default]
    Rational,
    /// `r = a - ln(1 - t)`; suited to exponentially decaying tails.
    Exponential,
}

/// Tolerances and budget for the adaptive quadrature routines.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub semi_infinite_map: SemiInfiniteMap,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 240,
            semi_infinite_map: SemiInfiniteMap::Rational,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        QuadratureSpec { rel_tol, abs_tol, ..Default::default() }
    }

    fn assert_valid(&self) {
        assert!(self.rel_tol > 0.0, "rel_tol must be positive");
        assert!(self.abs_tol >= 0.0, "abs_tol must be nonnegative");
        assert!(self.max_subdivisions >= 10, "max_subdivisions must be at least 10");
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

// One 15-point Kronrod panel; returns (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv = [0.0f64; 15];
    fv[7] = f_center;
    let mut res_k = WGK[7] * f_center;
    let mut res_g = WG[3] * f_center;
    let mut res_abs = res_k.abs();

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = res_k * half;
    let mut err = ((res_k - res_g) * half).abs();
    res_asc *= half.abs();
    res_abs *= half.abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * 1.0f64.min((200.0 * err / res_asc).powf(1.5));
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

struct Segment {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> (f64, f64) {
    let (value, err) = gk15(f, a, b);
    let mut total_value = value;
    let mut total_err = err;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { err, a, b, value });

    let mut splits = 0;
    while total_err > spec.target(total_value) && splits < spec.max_subdivisions {
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splittable in f64; put it back and stop
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        total_value += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Segment { err: e1, a: worst.a, b: mid, value: v1 });
        heap.push(Segment { err: e2, a: mid, b: worst.b, value: v2 });
        splits += 1;
    }
    (total_value, total_err)
}

/// Integrates `f` over `[a, b]`; `b` may be `f64::INFINITY`, in which case
/// the configured semi-infinite substitution is applied first.
///
/// Fails with `ToleranceNotMet` (carrying the best estimate and its error
/// bound) if the subdivision budget is exhausted first.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    let (value, err) = integrate_1d_estimate(&f, a, b, spec)?;
    if err <= spec.target(value) {
        Ok(value)
    } else {
        Err(NumericsError::ToleranceNotMet { estimate: value, error_bound: err })
    }
}

/// Like [`integrate_1d`] but always returns the estimate with its error
/// bound; only domain misuse is an error.
pub fn integrate_1d_estimate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), NumericsError> {
    spec.assert_valid();
    if a.is_infinite() || b.is_nan() || a.is_nan() {
        return Err(NumericsError::Domain(format!("bad interval [{a}, {b}]")));
    }
    if a == b {
        return Ok((0.0, 0.0));
    }
    if b.is_infinite() {
        let mapped = match spec.semi_infinite_map {
            SemiInfiniteMap::Rational => adaptive(
                &|t: f64| {
                    let u = 1.0 - t;
                    f(a + t / u) / (u * u)
                },
                0.0,
                1.0,
                spec,
            ),
            SemiInfiniteMap::Exponential => adaptive(
                &|t: f64| {
                    let u = 1.0 - t;
                    f(a - u.ln()) / u
                },
                0.0,
                1.0,
                spec,
            ),
        };
        return Ok(mapped);
    }
    Ok(adaptive(&f, a, b, spec))
}

/// Integrates `f(x, y)` over `{x0 <= x <= x1, 0 <= y <= y_upper(x)}` by
/// iterated quadrature; the inner integral runs at a 10x tighter tolerance
/// and is treated as exact by the outer rule. `x1` may be infinite.
pub fn integrate_2d<F, G>(
    f: F,
    x0: f64,
    x1: f64,
    y_upper: G,
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError>
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64) -> f64,
{
    spec.assert_valid();
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol / 10.0,
        abs_tol: spec.abs_tol / 10.0,
        ..*spec
    };
    let outer = |x: f64| {
        let top = y_upper(x);
        if top <= 0.0 {
            return 0.0;
        }
        let (v, _) = adaptive(&|y| f(x, y), 0.0, top, &inner_spec);
        v
    };
    let (value, err) = integrate_1d_estimate(&outer, x0, x1, spec)?;
    if err <= spec.target(value) {
        Ok(value)
    } else {
        Err(NumericsError::ToleranceNotMet { estimate: value, error_bound: err })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_tail_to_machine_precision() {
        let spec = QuadratureSpec::default();
        let v = integrate_1d(|x| (-x).exp(), 0.0, f64::INFINITY, &spec).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
        let spec = QuadratureSpec {
            semi_infinite_map: SemiInfiniteMap::Exponential,
            ..Default::default()
        };
        let v = integrate_1d(|x| (-x).exp(), 0.0, f64::INFINITY, &spec).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn polynomials_are_exact() {
        let spec = QuadratureSpec::new(1e-12, 1e-14);
        for degree in 0..=6 {
            let v = integrate_1d(|x: f64| x.powi(degree), 0.0, 2.0, &spec).unwrap();
            let exact = 2f64.powi(degree + 1) / f64::from(degree + 1);
            assert!(
                (v - exact).abs() <= 1e-12 * exact.abs(),
                "degree {degree}: {v} vs {exact}"
            );
        }
    }

    #[test]
    fn endpoint_singularity() {
        let spec = QuadratureSpec::new(1e-9, 1e-12);
        let v = integrate_1d(|x: f64| x.powf(-0.5), 0.0, 1.0, &spec).unwrap();
        assert!((v - 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn impossible_tolerance_reports_best_estimate() {
        let spec = QuadratureSpec {
            rel_tol: 1e-15,
            abs_tol: 0.0,
            max_subdivisions: 10,
            ..Default::default()
        };
        let err = integrate_1d(|x: f64| x.powf(-0.5), 0.0, 1.0, &spec).unwrap_err();
        match err {
            NumericsError::ToleranceNotMet { estimate, error_bound } => {
                assert!((estimate - 2.0).abs() < 0.1);
                assert!(error_bound > 0.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn triangle_region() {
        // int_0^pi int_0^{pi-u} sin u sin v dv du = 2
        let spec = QuadratureSpec::new(1e-9, 1e-12);
        let v = integrate_2d(
            |u: f64, w: f64| u.sin() * w.sin(),
            0.0,
            std::f64::consts::PI,
            |u| std::f64::consts::PI - u,
            &spec,
        )
        .unwrap();
        assert!((v - 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn semi_infinite_outer_region() {
        // int_0^inf int_0^{min(x,1)} e^{-x} dy dx = 1 - e^{-1} + e^{-1} = 1... computed:
        // int_0^1 x e^{-x} dx + int_1^inf e^{-x} dx = (1 - 2e^{-1}) + e^{-1} = 1 - e^{-1}
        let spec = QuadratureSpec::new(1e-9, 1e-12);
        let v = integrate_2d(|x: f64, _y| (-x).exp(), 0.0, f64::INFINITY, |x| x.min(1.0), &spec)
            .unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-8);
    }
}
