//! Bessel functions of the first kind of integer order and their zeros.

/// Zeros are polished until the Newton step falls below this relative size.
const ZERO_REL_TOL: f64 = 1e-15;

/// Scan step when bracketing zeros; consecutive zeros of `J_k` are more than
/// 3 apart for every integer `k >= 0`.
const SCAN_STEP: f64 = 0.25;
const MIN_ZERO_GAP: f64 = 2.5;

fn series(k: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=k {
        term *= half / i as f64;
    }
    let mut sum = term;
    let z = -half * half;
    let mut m = 0u32;
    loop {
        m += 1;
        term *= z / (m as f64 * (m + k) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || m > 300 {
            break;
        }
    }
    sum
}

/// Downward recurrence from a high order, normalized by
/// `J_0 + 2 Σ J_{2m} = 1`.
fn miller(k: u32, x: f64) -> f64 {
    let top = (k as f64).max(x);
    let mut start = (top + 20.0 + (40.0 * top).sqrt()) as u32;
    start += start % 2;
    let mut next = 0.0f64; // J_{n+1}
    let mut cur = 1e-300f64; // J_n
    let mut norm = 0.0f64;
    let mut result = 0.0f64;
    let mut n = start;
    loop {
        if n == k {
            result = cur;
        }
        if n % 2 == 0 {
            norm += if n == 0 { cur } else { 2.0 * cur };
        }
        if n == 0 {
            break;
        }
        let prev = 2.0 * n as f64 / x * cur - next;
        next = cur;
        cur = prev;
        n -= 1;
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    result / norm
}

/// `J_k(x)` for `x >= 0`.
///
/// The power series is used only while its terms decrease from the start
/// (`x^2 / 4 <= k + 1`), where it cannot lose digits to cancellation;
/// otherwise Miller's downward recurrence.
pub fn bessel_j(k: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let x = x.abs();
    if 0.25 * x * x <= (k + 1) as f64 {
        series(k, x)
    } else {
        miller(k, x)
    }
}

fn bessel_j_prime(k: u32, x: f64) -> f64 {
    if k == 0 {
        -bessel_j(1, x)
    } else {
        bessel_j(k - 1, x) - k as f64 / x * bessel_j(k, x)
    }
}

/// McMahon's large-zero expansion of `j_{k,n}`.
pub fn mcmahon(k: u32, n: u32) -> f64 {
    let mu = 4.0 * (k as f64).powi(2);
    let beta = (n as f64 + 0.5 * k as f64 - 0.25) * std::f64::consts::PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

fn polish(k: u32, mut lo: f64, mut hi: f64) -> f64 {
    let f = |x: f64| bessel_j(k, x);
    let mut flo = f(lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (flo < 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let d = bessel_j_prime(k, x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= ZERO_REL_TOL * x {
            return next;
        }
        x = next;
    }
    x
}

/// Positive zeros `j_{k,1} < j_{k,2} < ...` of `J_k` not exceeding `limit`,
/// at most `count` of them.
pub fn bessel_zeros(k: u32, count: usize, limit: f64) -> Vec<f64> {
    let mut zeros = Vec::new();
    let mut x = if k == 0 { 0.5 } else { k as f64 + 0.5 };
    let mut fx = bessel_j(k, x);
    while zeros.len() < count && x <= limit {
        let nx = x + SCAN_STEP;
        let fnx = bessel_j(k, nx);
        if fnx == 0.0 || (fnx < 0.0) != (fx < 0.0) {
            let z = if fnx == 0.0 { nx } else { polish(k, x, nx) };
            if z > limit {
                break;
            }
            zeros.push(z);
            x = z + MIN_ZERO_GAP;
            fx = bessel_j(k, x);
        } else {
            x = nx;
            fx = fnx;
        }
    }
    zeros
}

/// `j_{k,n}`, the `n`-th positive zero of `J_k` (`n >= 1`).
pub fn bessel_zero(k: u32, n: u32) -> f64 {
    assert!(n >= 1, "zeros are numbered from 1");
    bessel_zeros(k, n as usize, f64::INFINITY)[n as usize - 1]
}
