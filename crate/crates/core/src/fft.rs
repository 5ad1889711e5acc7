//! In-place radix-2 FFT for power-of-two lengths, plus a row/column 2-D
//! transform over row-major data.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Unnormalized transform: the forward uses `e^{-2πikn/N}`, the inverse
/// `e^{+2πikn/N}` followed by division by `N`.
pub fn fft_in_place(data: &mut [Complex64], dir: Direction) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }

    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = sign * 2.0 * PI / len as f64;
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| {
                let a = step * k as f64;
                Complex64::new(a.cos(), a.sin())
            })
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let u = data[start + k];
                let v = data[start + k + half] * twiddles[k];
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }

    if dir == Direction::Inverse {
        let scale = 1.0 / n as f64;
        for z in data.iter_mut() {
            *z *= scale;
        }
    }
}

/// Transform of an `n`-dimensional cube of side `side`, stored row-major.
pub fn fft_nd(data: &mut [Complex64], side: usize, dim: usize, dir: Direction) {
    match dim {
        1 => fft_in_place(data, dir),
        2 => {
            for row in data.chunks_mut(side) {
                fft_in_place(row, dir);
            }
            let mut column = alloc::vec![Complex64::new(0.0, 0.0); side];
            for c in 0..side {
                for r in 0..side {
                    column[r] = data[r * side + c];
                }
                fft_in_place(&mut column, dir);
                for r in 0..side {
                    data[r * side + c] = column[r];
                }
            }
        }
        _ => unreachable!("grid dimension is validated at construction"),
    }
}
