//! Unnormalized discrete Fourier sums `Σ_k a_k ω^{±jk}`.
//!
//! Power-of-two lengths go through an iterative radix-2 decimation-in-time
//! transform; every other length is summed directly in `O(n²)`.

use num_complex::Complex64;

use crate::fourier::root_of_unity;

/// Sign of the exponent in `ω^{±jk}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// `Σ_k a_k ω^{+jk}`: evaluates the polynomial `Σ a_k z^k` at `z = ω^j`.
    Positive,
    /// `Σ_k a_k ω^{-jk}`.
    Negative,
}

impl Sign {
    #[inline]
    fn factor(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Direct `O(n²)` evaluation.
pub fn dft_direct(input: &[Complex64], sign: Sign) -> Vec<Complex64> {
    let n = input.len();
    let s = sign.factor();
    (0..n)
        .map(|j| {
            input
                .iter()
                .enumerate()
                .map(|(k, &a)| a * root_of_unity(n, s * ((j * k) % n) as i64))
                .sum()
        })
        .collect()
}

/// Radix-2 decimation-in-time transform. `input.len()` must be a power of two.
pub fn fft_radix2(input: &[Complex64], sign: Sign) -> Vec<Complex64> {
    let n = input.len();
    assert!(n.is_power_of_two(), "fft_radix2 needs a power-of-two length, got {n}");
    let mut buf = input.to_vec();
    if n <= 1 {
        return buf;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let r = i.reverse_bits() >> (usize::BITS - bits);
        if i < r {
            buf.swap(i, r);
        }
    }
    let s = sign.factor();
    let twiddles: Vec<Complex64> = (0..n / 2).map(|k| root_of_unity(n, s * k as i64)).collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let u = buf[start + k];
                let v = buf[start + k + half] * w;
                buf[start + k] = u + v;
                buf[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
    buf
}

/// Dispatches to [`fft_radix2`] when the length is a power of two and to
/// [`dft_direct`] otherwise.
pub fn dft(input: &[Complex64], sign: Sign) -> Vec<Complex64> {
    if input.len().is_power_of_two() {
        fft_radix2(input, sign)
    } else {
        dft_direct(input, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    fn ramp(n: usize) -> Vec<Complex64> {
        (0..n).map(|k| Complex64::new(k as f64 * 0.37 - 1.0, (k * k) as f64 * 0.01)).collect()
    }

    #[test]
    fn radix2_matches_direct() {
        for p in 0..8 {
            let n = 1 << p;
            let a = ramp(n);
            for sign in [Sign::Positive, Sign::Negative] {
                let fast = fft_radix2(&a, sign);
                let slow = dft_direct(&a, sign);
                assert!(max_diff(&fast, &slow) <= 1e-10, "n = {n}");
            }
        }
    }

    #[test]
    fn positive_sign_is_polynomial_evaluation() {
        let a = ramp(6);
        let out = dft(&a, Sign::Positive);
        for (j, v) in out.iter().enumerate() {
            let z = root_of_unity(6, j as i64);
            let horner = a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
            assert!((v - horner).norm() < 1e-12);
        }
    }

    #[test]
    fn round_trip() {
        for n in [3usize, 5, 8, 12, 16] {
            let a = ramp(n);
            let back: Vec<_> =
                dft(&dft(&a, Sign::Positive), Sign::Negative).into_iter().map(|z| z / n as f64).collect();
            assert!(max_diff(&a, &back) <= 1e-12);
        }
    }
}
