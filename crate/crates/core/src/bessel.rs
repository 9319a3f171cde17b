//! Integer-order Bessel functions of the first kind.

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 50;
pub const MAX_ARGUMENT: f64 = 1e3;

/// Below this argument the power series converges without cancellation.
const SERIES_LIMIT: f64 = 1.0;

const RESCALE_ABOVE: f64 = 1e250;

/// `J_order(x)` for `order <= 50` and `|x| <= 1000`, accurate to about
/// `1e-14` absolute.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if order > MAX_ORDER || !(x.abs() <= MAX_ARGUMENT) {
        return Err(Error::OutOfSupportedRange { order, x });
    }
    let sign = if x < 0.0 && order % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let value = if ax == 0.0 {
        if order == 0 {
            1.0
        } else {
            0.0
        }
    } else if ax < SERIES_LIMIT {
        series(order, ax)
    } else {
        miller(order, ax)
    };
    Ok(sign * value)
}

/// `sum_k (-1)^k (x/2)^{2k+n} / (k! (n+k)!)`
fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (1..=order).fold(1.0, |acc, k| acc * half / f64::from(k));
    let mut sum = term;
    let q = -half * half;
    for k in 1..60 {
        term *= q / (f64::from(k) * f64::from(order + k));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Backward recurrence `J_{k-1} = (2k/x) J_k - J_{k+1}` from a start index
/// well beyond both `x` and `order`, normalised with
/// `J_0 + 2 sum_k J_{2k} = 1`.
fn miller(order: u32, x: f64) -> f64 {
    let reach = x.max(f64::from(order));
    let mut start = (reach + 30.0 + 12.0 * reach.cbrt()) as usize;
    start += start % 2;

    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{k-1}
        let idx = k - 1;
        if idx == order as usize {
            wanted = cur;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            next /= RESCALE_ABOVE;
            norm /= RESCALE_ABOVE;
            wanted /= RESCALE_ABOVE;
        }
    }
    norm += cur;
    wanted / norm
}
