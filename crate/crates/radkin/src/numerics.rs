//! Small numerical helpers shared across modules: least-squares line fits,
//! uniform-grid cubic interpolation, and a fixed-step RK4 driver.

/// Slope and intercept of the least-squares line through `(x, y)` pairs.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "need at least two points for a line fit");
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

/// Fitted exponential rate of a positive series: slope of `ln y` vs `x`.
pub fn exponential_rate(x: &[f64], y: &[f64]) -> f64 {
    let logs: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit(x, &logs).0
}

/// Fitted power-law exponent: slope of `ln y` vs `ln x`.
pub fn powerlaw_exponent(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly).0
}

/// Indices of strict local maxima of a series.
pub fn local_maxima(y: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        if y[i] > y[i - 1] && y[i] > y[i + 1] {
            out.push(i);
        }
    }
    out
}

/// Catmull-Rom cubic interpolation of uniformly sampled data.
///
/// `values[i]` is the sample at `x0 + i*h`. Queries outside the sampled
/// range clamp to the end values.
pub fn cubic_interp(values: &[f64], x0: f64, h: f64, x: f64) -> f64 {
    let n = values.len();
    assert!(n >= 2);
    let s = (x - x0) / h;
    if s <= 0.0 {
        return values[0];
    }
    if s >= (n - 1) as f64 {
        return values[n - 1];
    }
    let i = (s.floor() as usize).min(n - 2);
    let t = s - i as f64;
    let ym = if i == 0 { values[0] } else { values[i - 1] };
    let y0 = values[i];
    let y1 = values[i + 1];
    let yp = if i + 2 >= n {
        values[n - 1]
    } else {
        values[i + 2]
    };
    let a = -0.5 * ym + 1.5 * y0 - 1.5 * y1 + 0.5 * yp;
    let b = ym - 2.5 * y0 + 2.0 * y1 - 0.5 * yp;
    let c = 0.5 * (y1 - ym);
    ((a * t + b) * t + c) * t + y0
}

/// One classical RK4 step of `dy/dx = f(x, y)`.
pub fn rk4_step<const N: usize, E>(
    x: f64,
    y: &[f64; N],
    h: f64,
    f: &mut impl FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
) -> Result<[f64; N], E> {
    let k1 = f(x, y)?;
    let mut y2 = *y;
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k1[i];
    }
    let k2 = f(x + 0.5 * h, &y2)?;
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k2[i];
    }
    let k3 = f(x + 0.5 * h, &y2)?;
    for i in 0..N {
        y2[i] = y[i] + h * k3[i];
    }
    let k4 = f(x + h, &y2)?;
    let mut out = *y;
    for i in 0..N {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}
