use crate::error::Result;

/// `max(1e-6, 1e-6 |x|)`.
pub fn default_step(x: f64) -> f64 {
    (1e-6 * x.abs()).max(1e-6)
}

/// Central difference `(f(x+h) - f(x-h)) / 2h`.
pub fn derivative<F>(mut f: F, x: f64, h: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub fn try_derivative<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

/// Second-order difference that keeps every sample inside `[lo, hi]`.
///
/// Uses the central stencil when it fits and the three-point one-sided stencil
/// at either end otherwise.
pub fn derivative_clamped<F>(mut f: F, x: f64, h: f64, lo: f64, hi: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    try_derivative_clamped(|t| Ok(f(t)), x, h, lo, hi).expect("infallible")
}

pub fn try_derivative_clamped<F>(mut f: F, x: f64, h: f64, lo: f64, hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if x + h > hi {
        Ok((3.0 * f(x)? - 4.0 * f(x - h)? + f(x - 2.0 * h)?) / (2.0 * h))
    } else if x - h < lo {
        Ok((-3.0 * f(x)? + 4.0 * f(x + h)? - f(x + 2.0 * h)?) / (2.0 * h))
    } else {
        try_derivative(f, x, h)
    }
}

/// Fourth-order central difference on the five points `x, x ± h, x ± 2h`.
pub fn derivative5<F>(mut f: F, x: f64, h: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    try_derivative5(|t| Ok(f(t)), x, h).expect("infallible")
}

pub fn try_derivative5<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let outer = f(x + 2.0 * h)? - f(x - 2.0 * h)?;
    let inner = f(x + h)? - f(x - h)?;
    Ok((8.0 * inner - outer) / (12.0 * h))
}
