//! Small shared numerics: root bracketing, adaptive quadrature, and
//! finite-difference stencils on uniform grids.

/// Bisection on a bracketing interval. `f(lo)` and `f(hi)` must have opposite
/// signs. Returns the midpoint once the interval is below `xtol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let mut flo = f(lo);
    debug_assert!(flo * f(hi) <= 0.0, "bisect requires a sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < xtol {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

fn simpson_rule(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(fa, flm, fm, m - a);
    let right = simpson_rule(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of a smooth integrand.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson_rule(fa, fm, fb, b - a);
    adaptive_step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Composite Simpson on uniformly spaced samples. Falls back to the
/// trapezoid rule when fewer than 5 samples are available; an even panel
/// count is completed with one trapezoid panel at the end.
pub fn simpson_samples(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    if n < 5 {
        let mut s = 0.0;
        for i in 0..n - 1 {
            s += 0.5 * (values[i] + values[i + 1]) * h;
        }
        return s;
    }
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 < n {
        total += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        total += 0.5 * (values[i] + values[i + 1]) * h;
    }
    total
}

/// First derivative on a uniform grid: 4th-order centered stencils where five
/// samples are available, 2nd-order at the boundary.
pub fn derivative_uniform(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    if n < 2 {
        return d;
    }
    if n < 5 {
        for i in 0..n {
            d[i] = if i == 0 {
                if n >= 3 {
                    (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
                } else {
                    (f[1] - f[0]) / h
                }
            } else if i == n - 1 {
                if n >= 3 {
                    (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
                } else {
                    (f[n - 1] - f[n - 2]) / h
                }
            } else {
                (f[i + 1] - f[i - 1]) / (2.0 * h)
            };
        }
        return d;
    }
    for i in 0..n {
        d[i] = if i >= 2 && i + 2 < n {
            (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h)
        } else if i == 0 {
            (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
        } else if i == n - 1 {
            (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
        } else {
            (f[i + 1] - f[i - 1]) / (2.0 * h)
        };
    }
    d
}

/// Second derivative on a uniform grid, 4th-order centered in the interior.
pub fn second_derivative_uniform(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    if n < 3 {
        return d;
    }
    let h2 = h * h;
    for i in 0..n {
        d[i] = if i >= 2 && i + 2 < n {
            (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h2)
        } else if i == 0 {
            if n >= 4 {
                (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2
            } else {
                (f[0] - 2.0 * f[1] + f[2]) / h2
            }
        } else if i == n - 1 {
            if n >= 4 {
                (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2
            } else {
                (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) / h2
            }
        } else {
            (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2
        };
    }
    d
}

/// Periodic variants for closed curves: 4th-order centered stencils with
/// modular indexing. The duplicated closing sample must not be included.
pub fn derivative_periodic(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let at = |i: isize| f[i.rem_euclid(n as isize) as usize];
    (0..n as isize)
        .map(|i| (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h))
        .collect()
}

pub fn second_derivative_periodic(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let h2 = h * h;
    let at = |i: isize| f[i.rem_euclid(n as isize) as usize];
    (0..n as isize)
        .map(|i| {
            (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) - at(i + 2))
                / (12.0 * h2)
        })
        .collect()
}

/// Linear interpolation of tabulated `(x, y)` with strictly increasing `x`.
/// Arguments outside the table are clamped to the end values.
pub fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let mut lo = 0;
    let mut hi = n - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if xs[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + t * (ys[hi] - ys[lo])
}

/// Cubic Hermite interpolation of tabulated `(x, y, dy/dx)` with strictly
/// increasing `x`. Returns end values outside the table.
pub fn interp_hermite(xs: &[f64], ys: &[f64], dys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let mut lo = 0;
    let mut hi = n - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if xs[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let h = xs[hi] - xs[lo];
    let t = (x - xs[lo]) / h;
    let (t2, t3) = (t * t, t * t * t);
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * ys[lo] + h10 * h * dys[lo] + h01 * ys[hi] + h11 * h * dys[hi]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn adaptive_simpson_polynomial_and_singular_free() {
        let v = adaptive_simpson(|x| x * x, 0.0, 1.0, 1e-12);
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        let v = adaptive_simpson(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn simpson_samples_quadratic_exact() {
        let h = 0.1;
        let values: Vec<f64> = (0..11).map(|i| (i as f64 * h).powi(2)).collect();
        let v = simpson_samples(&values, h);
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_stencils_fourth_order() {
        let h = 1e-2;
        let f: Vec<f64> = (0..101).map(|i| (i as f64 * h).sin()).collect();
        let d = derivative_uniform(&f, h);
        let dd = second_derivative_uniform(&f, h);
        for i in 2..99 {
            let x = i as f64 * h;
            assert!((d[i] - x.cos()).abs() < 1e-9);
            assert!((dd[i] + x.sin()).abs() < 1e-7);
        }
    }

    #[test]
    fn periodic_stencils_on_circle_data() {
        let n = 256;
        let h = 2.0 * std::f64::consts::PI / n as f64;
        let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).cos()).collect();
        let d = derivative_periodic(&f, h);
        let dd = second_derivative_periodic(&f, h);
        for i in 0..n {
            let x = i as f64 * h;
            assert!((d[i] + x.sin()).abs() < 1e-7);
            assert!((dd[i] + x.cos()).abs() < 1e-5);
        }
    }

    #[test]
    fn interpolation_roundtrip() {
        let xs: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        let dys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        assert!((interp_linear(&xs, &ys, 2.05) - (2.05f64).exp()).abs() < 1e-3);
        assert!((interp_hermite(&xs, &ys, &dys, 2.05) - (2.05f64).exp()).abs() < 1e-8);
    }
}
