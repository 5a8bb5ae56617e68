//! Scalar root finding and minimization on brackets.

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign (or zero).
///
/// Stops once the bracket is narrower than `xtol` or after 200 halvings.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Safeguarded Newton: Newton steps that leave the bracket fall back to bisection.
pub fn newton_bisect<F: Fn(f64) -> (f64, f64)>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    let lo_neg = flo < 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == lo_neg {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= xtol {
            return 0.5 * (lo + hi);
        }
        let step = if dfx != 0.0 { x - fx / dfx } else { f64::NAN };
        let inside = step.is_finite() && step > lo.min(hi) && step < lo.max(hi);
        let nx = if inside { step } else { 0.5 * (lo + hi) };
        if (nx - x).abs() <= xtol {
            return nx;
        }
        x = nx;
    }
    x
}

/// Brackets `[a, b]` of sign changes of `f` on a uniform grid of `n` cells.
///
/// With `periodic` the grid wraps and the last cell closes onto `lo`, whose
/// value is taken as `f(lo)` again.
pub fn sign_change_brackets<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, periodic: bool) -> Vec<(f64, f64)> {
    let n = n.max(1);
    let h = (hi - lo) / n as f64;
    let vals: Vec<f64> = (0..=n).map(|i| if periodic && i == n { f(lo) } else { f(lo + h * i as f64) }).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (vals[i], vals[i + 1]);
        if !a.is_finite() || !b.is_finite() {
            continue;
        }
        if a == 0.0 || (a < 0.0) != (b < 0.0) && b != 0.0 {
            out.push((lo + h * i as f64, lo + h * (i + 1) as f64));
        }
    }
    out
}

/// All roots of `f` on `[lo, hi)` detectable as sign changes on an `n`-cell grid.
pub fn grid_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, xtol: f64) -> Vec<f64> {
    sign_change_brackets(&f, lo, hi, n, false).into_iter().map(|(a, b)| bisect(&f, a, b, xtol)).collect()
}

/// Root of `f` near `hint`: grow a symmetric window until it brackets a sign change.
///
/// The window starts at `w0` and doubles up to `wmax`; inside each window the
/// bracket nearest `hint` is refined.
pub fn local_root<F: Fn(f64) -> f64>(f: F, hint: f64, w0: f64, wmax: f64, xtol: f64) -> Option<f64> {
    let mut w = w0;
    while w <= wmax * (1.0 + 1e-12) {
        let brackets = sign_change_brackets(&f, hint - w, hint + w, 32, false);
        if let Some(&(a, b)) = brackets.iter().min_by(|x, y| {
            let dx = (0.5 * (x.0 + x.1) - hint).abs();
            let dy = (0.5 * (y.0 + y.1) - hint).abs();
            dx.total_cmp(&dy)
        }) {
            return Some(bisect(&f, a, b, xtol));
        }
        w *= 2.0;
    }
    None
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn newton_bisect_converges_on_cubic() {
        let r = newton_bisect(|x| (x * x * x - x - 2.0, 3.0 * x * x - 1.0), 1.0, 2.0, 1e-15);
        assert!((r * r * r - r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn grid_roots_of_sine() {
        let roots = grid_roots(f64::sin, 0.5, 10.0, 100, 1e-13);
        assert_eq!(roots.len(), 3);
        for (k, r) in roots.iter().enumerate() {
            assert!((r - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_brackets_include_wrap_cell() {
        // cos(x) - 0.9 on [0, 2pi) is positive at 0 and changes sign twice.
        let b = sign_change_brackets(|x| x.cos() - 0.9, 0.0, std::f64::consts::TAU, 64, true);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn local_root_prefers_nearest() {
        let r = local_root(f64::sin, 6.0, 0.1, 4.0, 1e-13).unwrap();
        assert!((r - std::f64::consts::TAU).abs() < 1e-12);
        assert!(local_root(|x: f64| x * x + 1.0, 0.0, 0.1, 1.0, 1e-12).is_none());
    }

    #[test]
    fn golden_min_of_parabola() {
        let (x, fx) = golden_min(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }
}
