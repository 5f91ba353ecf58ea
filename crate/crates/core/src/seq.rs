//! Periodic complex sequences and the unitary discrete Fourier transform.
//!
//! Everything in this crate operates on length-`N` periodic sequences.  The
//! transform used throughout is the *unitary* DFT
//!
//! ```text
//! X[k] = (1/sqrt(N)) * sum_n x[n] * w^(-n*k),   w = exp(j*2*pi/N),
//! ```
//!
//! whose fourth power is the identity and whose square is plain time
//! reversal.  Both facts are load-bearing for the rest of the crate: the
//! eigenvalues of this transform are exactly the fourth roots of unity, and
//! every user-separation formula in [`crate::rac`] relies on `dft(dft(x))`
//! being `time_reverse(x)` with no stray normalization constants.
//!
//! Under this kernel the DFT of `sqrt(N) * delta_m` is the exponential
//! sequence `w_{-m}`, not `w_m`; the sign is pinned by a unit test so it
//! cannot drift silently.
//!
//! # Example
//!
//! ```
//! use invseq::{dft, idft, Sequence};
//!
//! let x = Sequence::from_real(&[1.0, 2.0, 0.5, -1.0]).unwrap();
//! let spectrum = dft(&x);
//! let back = idft(&spectrum);
//! for n in 0..x.len() {
//!     assert!((back[n] - x[n]).norm() < 1e-12);
//! }
//! // Parseval: the transform preserves energy.
//! assert!((spectrum.norm_sqr() - x.norm_sqr()).abs() < 1e-12);
//! ```

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Index, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Sequence
// ---------------------------------------------------------------------------

/// A length-`N` periodic sequence of complex amplitudes.
///
/// Construction rejects empty and non-finite data, so every `Sequence` in
/// circulation has `N >= 1` and finite entries.  Index access via [`at`]
/// follows modulo-`N` arithmetic; plain `seq[n]` indexing also wraps, so
/// `seq[n]` means `seq[n mod N]`.
///
/// [`at`]: Sequence::at
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    entries: Vec<Complex64>,
}

impl Sequence {
    /// Wrap a vector of complex entries, rejecting empty or non-finite data.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (index, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::NonFiniteEntry { index });
            }
        }
        Ok(Self { entries })
    }

    /// Build a real-valued sequence.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// The all-zero sequence of length `n`.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "sequence length must be positive");
        Self {
            entries: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// The period `N`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false: empty sequences cannot be constructed.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry at a (possibly negative) index, interpreted modulo `N`.
    pub fn at(&self, n: isize) -> Complex64 {
        let len = self.entries.len() as isize;
        let idx = n.rem_euclid(len) as usize;
        self.entries[idx]
    }

    /// Borrow the raw entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Consume the sequence and return its entries.
    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    /// Squared 2-norm (the sequence energy).
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    /// 2-norm.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.re == 0.0 && e.im == 0.0)
    }

    /// Inner product `sum_n conj(self[n]) * other[n]`.
    ///
    /// # Panics
    /// Panics on length mismatch.
    pub fn inner(&self, other: &Sequence) -> Complex64 {
        assert_eq!(self.len(), other.len(), "inner product length mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Scale every entry by a complex constant.
    pub fn scaled(&self, c: Complex64) -> Sequence {
        Sequence {
            entries: self.entries.iter().map(|&e| e * c).collect(),
        }
    }

    /// Scale every entry by a real constant.
    pub fn scaled_real(&self, c: f64) -> Sequence {
        self.scaled(Complex64::new(c, 0.0))
    }

    /// Entrywise product of two sequences of equal period.
    pub fn entrywise(&self, other: &Sequence) -> Result<Sequence> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Sequence {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Entrywise complex conjugate.
    pub fn conjugated(&self) -> Sequence {
        Sequence {
            entries: self.entries.iter().map(|e| e.conj()).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<Complex64>) -> Sequence {
        debug_assert!(!entries.is_empty());
        Sequence { entries }
    }
}

impl Index<usize> for Sequence {
    type Output = Complex64;

    /// Modulo-`N` access: `seq[n]` is entry `n mod N`.
    fn index(&self, n: usize) -> &Complex64 {
        &self.entries[n % self.entries.len()]
    }
}

macro_rules! impl_seq_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Sequence> for &Sequence {
            type Output = Sequence;
            fn $method(self, rhs: &Sequence) -> Sequence {
                assert_eq!(self.len(), rhs.len(), "sequence length mismatch");
                Sequence {
                    entries: self
                        .entries
                        .iter()
                        .zip(&rhs.entries)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
    };
}

impl_seq_binop!(Add, add, +);
impl_seq_binop!(Sub, sub, -);

// ---------------------------------------------------------------------------
// Eigenvalue
// ---------------------------------------------------------------------------

/// One of the four possible DFT eigenvalues: the fourth roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Eigenvalue {
    /// `+1`
    PlusOne,
    /// `-1`
    MinusOne,
    /// `+j`
    PlusJ,
    /// `-j`
    MinusJ,
}

impl Eigenvalue {
    /// All four eigenvalues in the fixed order `+1, -1, +j, -j`.
    pub const ALL: [Eigenvalue; 4] = [
        Eigenvalue::PlusOne,
        Eigenvalue::MinusOne,
        Eigenvalue::PlusJ,
        Eigenvalue::MinusJ,
    ];

    /// The complex value of the eigenvalue (exact, no rounding).
    pub fn value(self) -> Complex64 {
        match self {
            Eigenvalue::PlusOne => Complex64::new(1.0, 0.0),
            Eigenvalue::MinusOne => Complex64::new(-1.0, 0.0),
            Eigenvalue::PlusJ => Complex64::new(0.0, 1.0),
            Eigenvalue::MinusJ => Complex64::new(0.0, -1.0),
        }
    }

    /// Complex conjugate; for fourth roots of unity this equals the cube.
    pub fn conjugate(self) -> Eigenvalue {
        match self {
            Eigenvalue::PlusOne => Eigenvalue::PlusOne,
            Eigenvalue::MinusOne => Eigenvalue::MinusOne,
            Eigenvalue::PlusJ => Eigenvalue::MinusJ,
            Eigenvalue::MinusJ => Eigenvalue::PlusJ,
        }
    }

    /// `j^k` for any signed exponent.
    pub fn j_pow(k: i32) -> Eigenvalue {
        match k.rem_euclid(4) {
            0 => Eigenvalue::PlusOne,
            1 => Eigenvalue::PlusJ,
            2 => Eigenvalue::MinusOne,
            _ => Eigenvalue::MinusJ,
        }
    }

    /// Integer power of the eigenvalue.
    pub fn pow(self, e: u32) -> Eigenvalue {
        let base = match self {
            Eigenvalue::PlusOne => 0,
            Eigenvalue::PlusJ => 1,
            Eigenvalue::MinusOne => 2,
            Eigenvalue::MinusJ => 3,
        };
        Eigenvalue::j_pow((base * e as i32) % 4)
    }

    /// Eigenvectors of `+1`/`-1` are even sequences, of `+j`/`-j` odd ones.
    pub fn is_even_symmetry(self) -> bool {
        matches!(self, Eigenvalue::PlusOne | Eigenvalue::MinusOne)
    }
}

impl Mul for Eigenvalue {
    type Output = Eigenvalue;

    fn mul(self, rhs: Eigenvalue) -> Eigenvalue {
        let q = |e: Eigenvalue| match e {
            Eigenvalue::PlusOne => 0,
            Eigenvalue::PlusJ => 1,
            Eigenvalue::MinusOne => 2,
            Eigenvalue::MinusJ => 3,
        };
        Eigenvalue::j_pow(q(self) + q(rhs))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Eigenvalue::PlusOne => "+1",
            Eigenvalue::MinusOne => "-1",
            Eigenvalue::PlusJ => "+j",
            Eigenvalue::MinusJ => "-j",
        };
        f.write_str(s)
    }
}

impl FromStr for Eigenvalue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" => Ok(Eigenvalue::PlusOne),
            "-1" => Ok(Eigenvalue::MinusOne),
            "+j" | "j" => Ok(Eigenvalue::PlusJ),
            "-j" => Ok(Eigenvalue::MinusJ),
            other => Err(Error::ParseEigenvalue(other.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// The unitary DFT
// ---------------------------------------------------------------------------

/// Unitary DFT, `X[k] = (1/sqrt(N)) * sum_n x[n] * exp(-j*2*pi*n*k/N)`.
///
/// Dispatches to a radix-2 fast path for power-of-two lengths and to the
/// direct matrix-vector product otherwise; the two agree to `1e-12`.
pub fn dft(x: &Sequence) -> Sequence {
    let n = x.len();
    if n > 1 && n.is_power_of_two() {
        radix2(x.entries(), Direction::Forward)
    } else {
        direct(x.entries(), Direction::Forward)
    }
}

/// Direct `O(N^2)` evaluation of the unitary DFT (the reference path).
pub fn dft_direct(x: &Sequence) -> Sequence {
    direct(x.entries(), Direction::Forward)
}

/// Inverse unitary DFT; equals three forward applications.
pub fn idft(x: &Sequence) -> Sequence {
    let n = x.len();
    if n > 1 && n.is_power_of_two() {
        radix2(x.entries(), Direction::Inverse)
    } else {
        direct(x.entries(), Direction::Inverse)
    }
}

/// Time reversal `x⁻[n] = x[(N-n) mod N]`; equal to two DFT applications.
pub fn time_reverse(x: &Sequence) -> Sequence {
    let n = x.len();
    Sequence::from_vec_unchecked((0..n).map(|i| x.entries[(n - i) % n]).collect())
}

/// Cyclic convolution `out[n] = sum_m x[m] * y[(n-m) mod N]`.
///
/// Satisfies the convolution theorem for the unitary DFT:
/// `dft(x*y) = sqrt(N) * dft(x) . dft(y)` entrywise.
pub fn cyclic_convolve(x: &Sequence, y: &Sequence) -> Result<Sequence> {
    let n = x.len();
    if n != y.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: y.len(),
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (target, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..n {
            acc += x.entries[m] * y.entries[(target + n - m) % n];
        }
        *o = acc;
    }
    Ok(Sequence::from_vec_unchecked(out))
}

/// Even part `(x + x⁻)/2`.
pub fn even_part(x: &Sequence) -> Sequence {
    (&(x + &time_reverse(x))).scaled_real(0.5)
}

/// Odd part `(x - x⁻)/2`; its index-0 entry is always zero.
pub fn odd_part(x: &Sequence) -> Sequence {
    (&(x - &time_reverse(x))).scaled_real(0.5)
}

// ---------------------------------------------------------------------------
// Basis sequences
// ---------------------------------------------------------------------------

/// The named basis sequences used as generator inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `delta_m`: 1 at index `m`, 0 elsewhere.
    Delta,
    /// `w_m[n] = exp(j*2*pi*m*n/N)`.
    Exponential,
    /// `cos_m = (w_m + w_{-m})/2`, real-valued.
    Cosine,
    /// `sin_m = (w_m - w_{-m})/(2j)`, real-valued.
    Sine,
}

/// Build the basis sequence of the given kind, frequency/offset `m`, length `n`.
///
/// Requires `m < n`.  Note the sign pairing with the transform kernel:
/// `dft(delta_m) = w_{-m} / sqrt(N)`.
pub fn basis(kind: BasisKind, m: usize, n: usize) -> Result<Sequence> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if m >= n {
        return Err(Error::IndexOutOfRange { index: m, len: n });
    }
    let entries = match kind {
        BasisKind::Delta => {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[m] = Complex64::new(1.0, 0.0);
            v
        }
        BasisKind::Exponential => (0..n)
            .map(|t| Complex64::from_polar(1.0, TAU * (m * t % n) as f64 / n as f64))
            .collect(),
        BasisKind::Cosine => (0..n)
            .map(|t| Complex64::new((TAU * (m * t % n) as f64 / n as f64).cos(), 0.0))
            .collect(),
        BasisKind::Sine => (0..n)
            .map(|t| Complex64::new((TAU * (m * t % n) as f64 / n as f64).sin(), 0.0))
            .collect(),
    };
    Ok(Sequence::from_vec_unchecked(entries))
}

/// `delta_m` of length `n`.
pub fn delta(m: usize, n: usize) -> Result<Sequence> {
    basis(BasisKind::Delta, m, n)
}

/// Exponential sequence `w_m` of length `n`.
pub fn exponential(m: usize, n: usize) -> Result<Sequence> {
    basis(BasisKind::Exponential, m, n)
}

// ---------------------------------------------------------------------------
// Transform kernels
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq)]
enum Direction {
    Forward,
    Inverse,
}

fn direct(x: &[Complex64], dir: Direction) -> Sequence {
    let n = x.len();
    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    // One period of the twiddle table; exponents reduced mod N.
    let tw: Vec<Complex64> = (0..n)
        .map(|t| Complex64::from_polar(1.0, sign * TAU * t as f64 / n as f64))
        .collect();
    let scale = 1.0 / (n as f64).sqrt();
    let out = (0..n)
        .map(|k| {
            let acc: Complex64 = x
                .iter()
                .enumerate()
                .map(|(m, &v)| v * tw[m * k % n])
                .sum();
            acc * scale
        })
        .collect();
    Sequence::from_vec_unchecked(out)
}

fn radix2(x: &[Complex64], dir: Direction) -> Sequence {
    let n = x.len();
    debug_assert!(n.is_power_of_two());
    let mut a = x.to_vec();

    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }

    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let ang = sign * TAU / len as f64;
        let half = len / 2;
        for start in (0..n).step_by(len) {
            for off in 0..half {
                let w = Complex64::from_polar(1.0, ang * off as f64);
                let u = a[start + off];
                let v = a[start + off + half] * w;
                a[start + off] = u + v;
                a[start + off + half] = u - v;
            }
        }
        len <<= 1;
    }

    let scale = 1.0 / (n as f64).sqrt();
    for e in &mut a {
        *e *= scale;
    }
    Sequence::from_vec_unchecked(a)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent O(N^2) oracle: plain double loop, no shared kernels.
    fn oracle_dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len() as f64;
        (0..x.len())
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (m, &v) in x.iter().enumerate() {
                    let phase = -TAU * (m as f64) * (k as f64) / n;
                    acc += v * Complex64::new(phase.cos(), phase.sin());
                }
                acc / n.sqrt()
            })
            .collect()
    }

    fn assert_close(a: &Sequence, b: &Sequence, tol: f64) {
        assert_eq!(a.len(), b.len());
        let scale = a.norm().max(b.norm()).max(1.0);
        for n in 0..a.len() {
            let d = (a[n] - b[n]).norm();
            assert!(d <= tol * scale, "entry {n}: {} vs {}", a[n], b[n]);
        }
    }

    fn rng_sequence(seed: u64, n: usize) -> Sequence {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Sequence::new(
            (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn impulse_transforms_to_constant() {
        let x = delta(0, 4).unwrap();
        let spectrum = dft(&x);
        for k in 0..4 {
            assert!((spectrum[k] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn simplest_invariant_sequence_is_fixed_by_dft() {
        // delta_0 + w_0/sqrt(8) maps to itself under the transform.
        let n = 8;
        let w0 = exponential(0, n).unwrap();
        let x = &delta(0, n).unwrap() + &w0.scaled_real(1.0 / (n as f64).sqrt());
        assert_close(&dft(&x), &x, 1e-12);
    }

    #[test]
    fn matches_direct_sum_oracle() {
        let x = rng_sequence(11, 16);
        let got = dft(&x);
        let want = oracle_dft(x.entries());
        for k in 0..16 {
            assert!((got[k] - want[k]).norm() <= 1e-12 * x.norm());
        }
    }

    #[test]
    fn fast_and_direct_paths_agree() {
        for &n in &[2usize, 4, 8, 16, 32, 64] {
            let x = rng_sequence(n as u64, n);
            assert_close(&dft(&x), &dft_direct(&x), 1e-12);
        }
    }

    #[test]
    fn idft_of_constant_is_impulse() {
        let c = Sequence::from_real(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert_close(&idft(&c), &delta(0, 4).unwrap(), 1e-15);
    }

    #[test]
    fn idft_inverts_dft() {
        let x = rng_sequence(3, 12);
        assert_close(&idft(&dft(&x)), &x, 1e-12);
        assert_close(&dft(&idft(&x)), &x, 1e-12);
    }

    #[test]
    fn idft_equals_three_forward_transforms() {
        let x = rng_sequence(5, 10);
        assert_close(&idft(&x), &dft(&dft(&dft(&x))), 1e-12);
    }

    #[test]
    fn reversal_definition_unrolled() {
        let x = Sequence::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let r = time_reverse(&x);
        let want = Sequence::from_real(&[1.0, 4.0, 3.0, 2.0]).unwrap();
        assert_eq!(r, want);
        // Involution.
        assert_eq!(time_reverse(&r), x);
    }

    #[test]
    fn double_dft_is_time_reversal() {
        let x = rng_sequence(7, 9);
        assert_close(&dft(&dft(&x)), &time_reverse(&x), 1e-12);
    }

    #[test]
    fn reversal_of_shifted_impulse() {
        let d2 = delta(2, 6).unwrap();
        assert_close(&time_reverse(&d2), &delta(4, 6).unwrap(), 1e-15);
    }

    #[test]
    fn convolution_identity_element() {
        let x = rng_sequence(13, 8);
        let out = cyclic_convolve(&x, &delta(0, 8).unwrap()).unwrap();
        assert_close(&out, &x, 1e-14);
    }

    #[test]
    fn convolution_with_shifted_impulse_shifts() {
        let x = rng_sequence(17, 6);
        let out = cyclic_convolve(&x, &delta(2, 6).unwrap()).unwrap();
        for n in 0..6isize {
            assert!((out.at(n) - x.at(n - 2)).norm() < 1e-14);
        }
    }

    #[test]
    fn convolution_theorem() {
        let x = rng_sequence(19, 16);
        let y = rng_sequence(23, 16);
        let lhs = dft(&cyclic_convolve(&x, &y).unwrap());
        let rhs = dft(&x).entrywise(&dft(&y)).unwrap().scaled_real(4.0); // sqrt(16)
        assert_close(&lhs, &rhs, 1e-10);
    }

    #[test]
    fn convolution_length_mismatch_is_rejected() {
        let x = rng_sequence(1, 4);
        let y = rng_sequence(2, 6);
        assert!(matches!(
            cyclic_convolve(&x, &y),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn parity_decomposition_reconstructs() {
        let x = rng_sequence(29, 7);
        let back = &even_part(&x) + &odd_part(&x);
        assert_close(&back, &x, 1e-15);
        assert!((odd_part(&x)[0]).norm() < 1e-15);
    }

    #[test]
    fn basis_values() {
        assert_eq!(
            delta(0, 4).unwrap(),
            Sequence::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap()
        );
        let c = basis(BasisKind::Cosine, 1, 4).unwrap();
        let want = Sequence::from_real(&[1.0, 0.0, -1.0, 0.0]).unwrap();
        assert_close(&c, &want, 1e-15);
        // Cosine and sine are real-valued.
        let s = basis(BasisKind::Sine, 3, 7).unwrap();
        assert!(s.entries().iter().all(|e| e.im == 0.0));
    }

    #[test]
    fn basis_rejects_out_of_range() {
        assert!(matches!(
            basis(BasisKind::Delta, 4, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    /// Sign convention: under the kernel w^(-nk), sqrt(N)*dft(delta_m) is
    /// w_{-m} (that is, w_{N-m}), not w_m.
    #[test]
    fn dft_of_impulse_pins_sign_convention() {
        let (n, m) = (8, 3);
        let lhs = dft(&delta(m, n).unwrap()).scaled_real((n as f64).sqrt());
        let w_neg_m = exponential(n - m, n).unwrap();
        assert_close(&lhs, &w_neg_m, 1e-12);
        // And it differs from w_m itself.
        let w_m = exponential(m, n).unwrap();
        assert!((&lhs - &w_m).norm() > 1.0);
    }

    #[test]
    fn sequence_construction_rejects_bad_input() {
        assert!(matches!(Sequence::new(vec![]), Err(Error::EmptySequence)));
        assert!(matches!(
            Sequence::new(vec![Complex64::new(f64::NAN, 0.0)]),
            Err(Error::NonFiniteEntry { index: 0 })
        ));
    }

    #[test]
    fn eigenvalue_constants() {
        for lambda in Eigenvalue::ALL {
            let v = lambda.value();
            assert!((v.powu(4) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            assert_eq!(lambda.pow(3), lambda.conjugate());
        }
        assert_eq!(Eigenvalue::PlusJ * Eigenvalue::PlusJ, Eigenvalue::MinusOne);
        assert_eq!("+j".parse::<Eigenvalue>().unwrap(), Eigenvalue::PlusJ);
        assert_eq!(Eigenvalue::MinusJ.to_string(), "-j");
    }

    #[test]
    fn values_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<Sequence>();
        check::<Eigenvalue>();
    }

    proptest! {
        #[test]
        fn four_applications_return_input(seed in 0u64..1000, n in 1usize..33) {
            let x = rng_sequence(seed, n);
            let four = dft(&dft(&dft(&dft(&x))));
            let err = (&four - &x).norm();
            prop_assert!(err <= 1e-10 * x.norm().max(1e-30));
        }

        #[test]
        fn transform_preserves_norm(seed in 0u64..1000, n in 1usize..33) {
            let x = rng_sequence(seed, n);
            let x_norm = x.norm();
            prop_assert!((dft(&x).norm() - x_norm).abs() <= 1e-12 * x_norm.max(1.0));
        }

        #[test]
        fn dft_commutes_with_reversal(seed in 0u64..1000, n in 1usize..33) {
            let x = rng_sequence(seed, n);
            let lhs = dft(&time_reverse(&x));
            let rhs = time_reverse(&dft(&x));
            prop_assert!((&lhs - &rhs).norm() <= 1e-12 * x.norm().max(1.0));
        }

        #[test]
        fn convolution_is_commutative_and_bilinear(
            seed in 0u64..500, n in 1usize..33, a in -3.0f64..3.0, b in -3.0f64..3.0
        ) {
            let x = rng_sequence(seed, n);
            let y = rng_sequence(seed + 1, n);
            let z = rng_sequence(seed + 2, n);
            let xy = cyclic_convolve(&x, &y).unwrap();
            let yx = cyclic_convolve(&y, &x).unwrap();
            prop_assert!((&xy - &yx).norm() <= 1e-12 * xy.norm().max(1.0));
            // x * (a y + b z) = a (x*y) + b (x*z)
            let combo = &y.scaled_real(a) + &z.scaled_real(b);
            let lhs = cyclic_convolve(&x, &combo).unwrap();
            let rhs = &xy.scaled_real(a) + &cyclic_convolve(&x, &z).unwrap().scaled_real(b);
            prop_assert!((&lhs - &rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
        }

        #[test]
        fn even_and_odd_parts_are_orthogonal(seed in 0u64..1000, n in 1usize..33) {
            let x = rng_sequence(seed, n);
            let ip = even_part(&x).inner(&odd_part(&x));
            prop_assert!(ip.norm() <= 1e-10 * x.norm_sqr().max(1.0));
        }
    }
}
