//! Digital transmission over the adder channel: quantization, energy
//! budgeting, full and fast receivers, and blind signature estimation.
//!
//! Each user sends one real coefficient per frame, obtained from a `b`-bit
//! word through a uniform digital-to-analog grid spanning `[-M, +M]` with
//! `2^b` levels (endpoints included).  The channel carries
//! `y = a_1 x_1 + … + a_k x_k`; the receiver separates eigenspace components
//! with [`crate::rac`], projects out each coefficient and re-quantizes.
//!
//! The peak amplitude `M` follows from the energy budget: with
//! `M = sqrt(E_max / (‖x_1‖² + … + ‖x_k‖²))` the channel energy can never
//! exceed `E_max`, whatever words the users pick.
//!
//! For the two-user `(V_{+1}, V_{-1})` design a shortcut receiver reads both
//! coefficients off sample 0 alone: `Y[0]` is the entry sum of `y` scaled by
//! `1/sqrt(N)`, so `a_1 = ((y[0]+Y[0])/2)/x_1[0]` and
//! `a_2 = ((y[0]-Y[0])/2)/x_2[0]` cost `N+1` additions, three
//! multiplications and two halvings.
//!
//! In the pooled multiuser system every eigenspace group owns several
//! distinct signatures and the receiver does not know which one was used.
//! [`estimate_signature`] recovers it blindly: divide the group component by
//! each pooled candidate entrywise, pick the candidate whose quotient has the
//! smallest variance, and read the coefficient off the quotient mean.
//!
//! # Example
//!
//! ```
//! use invseq::eigen::representative_sequence;
//! use invseq::rac::EigenspaceSelection;
//! use invseq::txrx::{dynamic_range, receive_full, transmit, FrameConfig};
//! use invseq::Eigenvalue;
//!
//! let sigs = [
//!     representative_sequence(Eigenvalue::PlusOne, 8).unwrap(),
//!     representative_sequence(Eigenvalue::MinusOne, 8).unwrap(),
//! ];
//! let plain: Vec<_> = sigs.iter().map(|s| s.sequence().clone()).collect();
//! let peak = dynamic_range(16.0, &plain).unwrap();
//! let cfg = FrameConfig::new(4, peak, 16.0, 8).unwrap();
//!
//! let sel = EigenspaceSelection::pair(Eigenvalue::PlusOne, Eigenvalue::MinusOne).unwrap();
//! let words = [13u64, 2u64];
//! let y = transmit(&words, &plain, &cfg).unwrap();
//! assert!(y.sequence().norm_sqr() <= 16.0 * (1.0 + 1e-12));
//! assert_eq!(receive_full(&y, &sigs, &sel, &cfg).unwrap(), words);
//! ```

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::eigen::InvariantSequence;
use crate::error::{Error, Result};
use crate::rac::{decode, ChannelOutput, EigenspaceSelection};
use crate::seq::{Eigenvalue, Sequence};

/// Entries below this fraction of a signature's peak modulus are excluded
/// from the estimator's entrywise division.
const DIVISION_MASK_REL: f64 = 1e-9;

/// Normalized inner products above `1 - PROPORTIONALITY_GAP` mark two pooled
/// signatures as indistinguishable.
const PROPORTIONALITY_GAP: f64 = 1e-9;

// ---------------------------------------------------------------------------
// FrameConfig and converters
// ---------------------------------------------------------------------------

/// Per-frame transmission parameters.
///
/// `bits` is the D/A resolution per user (rate: `bits` per frame interval per
/// user), `peak` the coefficient bound `M`, `energy_budget` the channel
/// energy cap `E_max`, and `len` the signature period `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameConfig {
    bits: u32,
    peak: f64,
    energy_budget: f64,
    len: usize,
}

impl FrameConfig {
    /// Validate frame parameters: `1 <= bits <= 32`, `peak > 0`, budget > 0.
    pub fn new(bits: u32, peak: f64, energy_budget: f64, len: usize) -> Result<Self> {
        if bits < 1 || bits > 32 {
            return Err(Error::InvalidConfig(format!(
                "bit depth {bits} outside 1..=32"
            )));
        }
        if !(peak.is_finite() && peak > 0.0) {
            return Err(Error::InvalidConfig(format!("peak amplitude {peak}")));
        }
        if !(energy_budget.is_finite() && energy_budget > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "energy budget {energy_budget}"
            )));
        }
        if len == 0 {
            return Err(Error::InvalidConfig("sequence length 0".into()));
        }
        Ok(Self {
            bits,
            peak,
            energy_budget,
            len,
        })
    }

    /// D/A resolution in bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Peak coefficient magnitude `M`.
    pub fn peak(&self) -> f64 {
        self.peak
    }

    /// Channel energy cap `E_max`.
    pub fn energy_budget(&self) -> f64 {
        self.energy_budget
    }

    /// Signature period `N`.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Never zero-length.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of quantization levels, `2^bits`.
    pub fn levels(&self) -> u64 {
        1u64 << self.bits
    }
}

/// Map a `b`-bit word onto the uniform level grid over `[-M, +M]`:
/// `a = M * (2*word/(2^b - 1) - 1)`.  Strictly monotone; endpoints map to
/// `±M` exactly.
pub fn da_convert(word: u64, cfg: &FrameConfig) -> Result<f64> {
    let levels = cfg.levels();
    if word >= levels {
        return Err(Error::WordOutOfRange {
            word,
            bits: cfg.bits,
        });
    }
    let steps = (levels - 1) as f64;
    Ok(cfg.peak * (2.0 * word as f64 / steps - 1.0))
}

/// Nearest-level quantization of a coefficient, clamping outside `[-M, +M]`;
/// exact half-way ties resolve toward the smaller word.
pub fn ad_convert(a: f64, cfg: &FrameConfig) -> u64 {
    let levels = cfg.levels();
    let steps = (levels - 1) as f64;
    let clamped = a.clamp(-cfg.peak, cfg.peak);
    let position = (clamped / cfg.peak + 1.0) * steps / 2.0;
    let word = (position - 0.5).ceil() as i64;
    word.clamp(0, (levels - 1) as i64) as u64
}

// ---------------------------------------------------------------------------
// Energy budgeting
// ---------------------------------------------------------------------------

/// The peak coefficient `M = sqrt(E_max / sum_i ‖x_i‖²)`.
///
/// With every `|a_i| <= M` the channel energy `‖sum_i a_i x_i‖²` stays within
/// `E_max`; for signatures in distinct eigenspaces the bound is tight at
/// full-scale words.
pub fn dynamic_range(e_max: f64, signatures: &[Sequence]) -> Result<f64> {
    if !(e_max.is_finite() && e_max > 0.0) {
        return Err(Error::InvalidConfig(format!("energy budget {e_max}")));
    }
    if signatures.is_empty() {
        return Err(Error::EmptyPool);
    }
    let total: f64 = signatures.iter().map(Sequence::norm_sqr).sum();
    if total == 0.0 {
        return Err(Error::ZeroSignature);
    }
    Ok((e_max / total).sqrt())
}

// ---------------------------------------------------------------------------
// Transmitter and receivers
// ---------------------------------------------------------------------------

/// Form `y = sum_i da(word_i) * x_i`.
///
/// Accepts any user count >= 1 (single-signature frames occur in the pooled
/// multiuser mode); eigenspace-level designs use 2–4 signatures.
pub fn transmit(words: &[u64], signatures: &[Sequence], cfg: &FrameConfig) -> Result<ChannelOutput> {
    if words.len() != signatures.len() {
        return Err(Error::CountMismatch {
            words: words.len(),
            signatures: signatures.len(),
        });
    }
    if words.is_empty() {
        return Err(Error::EmptyPool);
    }
    for x in signatures {
        if x.len() != cfg.len {
            return Err(Error::LengthMismatch {
                left: cfg.len,
                right: x.len(),
            });
        }
    }
    let mut y = Sequence::zeros(cfg.len);
    for (&word, x) in words.iter().zip(signatures) {
        let a = da_convert(word, cfg)?;
        y = &y + &x.scaled_real(a);
    }
    Ok(ChannelOutput::new(y))
}

/// Recover the real coefficients `a_i` from a channel output: separate the
/// eigenspace components, then project each onto its signature,
/// `a_i = Re ⟨x_i, component_i⟩ / ‖x_i‖²`.
pub fn recover_coefficients(
    y: &ChannelOutput,
    signatures: &[InvariantSequence],
    sel: &EigenspaceSelection,
) -> Result<Vec<f64>> {
    if signatures.len() != sel.user_count() {
        return Err(Error::CountMismatch {
            words: signatures.len(),
            signatures: sel.user_count(),
        });
    }
    for (sig, &lambda) in signatures.iter().zip(sel.lambdas()) {
        if sig.eigenvalue() != lambda {
            return Err(Error::InvalidSelection(format!(
                "signature tagged {} assigned to eigenspace {}",
                sig.eigenvalue(),
                lambda
            )));
        }
        if sig.is_zero() {
            return Err(Error::ZeroSignature);
        }
    }
    let components = decode(y, sel);
    Ok(signatures
        .iter()
        .zip(&components)
        .map(|(sig, comp)| {
            let x = sig.sequence();
            x.inner(comp).re / x.norm_sqr()
        })
        .collect())
}

/// Full receiver: coefficient recovery followed by A/D conversion.  In the
/// noiseless case the round trip `receive_full(transmit(words))` is exact.
pub fn receive_full(
    y: &ChannelOutput,
    signatures: &[InvariantSequence],
    sel: &EigenspaceSelection,
    cfg: &FrameConfig,
) -> Result<Vec<u64>> {
    let coeffs = recover_coefficients(y, signatures, sel)?;
    Ok(coeffs.into_iter().map(|a| ad_convert(a, cfg)).collect())
}

/// Arithmetic performed by the fast receiver, for budget assertions.
/// Halvings are counted separately: they are bit shifts, not multiplies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCount {
    pub additions: usize,
    pub multiplications: usize,
    pub shifts: usize,
}

/// Fast noiseless receiver for the `(V_{+1}, V_{-1})` design; returns
/// `(a_1, a_2)`.
///
/// Uses only sample 0 and the entry sum: `Y[0] = (sum_n y[n]) / sqrt(N)`,
/// then `a_1 = ((y[0]+Y[0])/2) / x_1[0]` and `a_2 = ((y[0]-Y[0])/2) / x_2[0]`.
/// Both signatures must have a nonzero sample at index 0.
pub fn receive_fast2(y: &ChannelOutput, x1: &Sequence, x2: &Sequence) -> Result<(f64, f64)> {
    receive_fast2_instrumented(y, x1, x2).map(|(coeffs, _)| coeffs)
}

/// [`receive_fast2`] with the exact operation tally: `N+1` additions, three
/// multiplications (`1/sqrt(N)`, `1/x_1[0]`, `1/x_2[0]`) and two halvings.
pub fn receive_fast2_instrumented(
    y: &ChannelOutput,
    x1: &Sequence,
    x2: &Sequence,
) -> Result<((f64, f64), OpCount)> {
    let x1_dc = x1.entries()[0];
    let x2_dc = x2.entries()[0];
    if x1_dc.norm() == 0.0 || x2_dc.norm() == 0.0 {
        return Err(Error::ZeroDcComponent);
    }
    let yv = y.sequence();
    let n = yv.len();
    if x1.len() != n || x2.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: x1.len().max(x2.len()),
        });
    }

    let mut ops = OpCount::default();

    // Entry sum of y: N-1 additions.
    let mut sum = yv.entries()[0];
    for &e in &yv.entries()[1..] {
        sum += e;
        ops.additions += 1;
    }
    // Y[0] = sum / sqrt(N): one multiplication by 1/sqrt(N).
    let dc_spectrum = sum * (1.0 / (n as f64).sqrt());
    ops.multiplications += 1;

    // Butterfly on sample 0: two additions.
    let y0 = yv.entries()[0];
    let s = y0 + dc_spectrum;
    ops.additions += 1;
    let d = y0 - dc_spectrum;
    ops.additions += 1;

    // Halvings are shifts.
    let s_half = s * 0.5;
    ops.shifts += 1;
    let d_half = d * 0.5;
    ops.shifts += 1;

    // One multiplication each by 1/x1[0] and 1/x2[0].
    let a1 = (s_half / x1_dc).re;
    ops.multiplications += 1;
    let a2 = (d_half / x2_dc).re;
    ops.multiplications += 1;

    Ok(((a1, a2), ops))
}

// ---------------------------------------------------------------------------
// Signature pools and blind estimation
// ---------------------------------------------------------------------------

/// A pool of candidate signatures, grouped by eigenvalue.
///
/// Within a group all entries must be pairwise non-proportional, otherwise
/// the variance detector could not tell them apart.
#[derive(Clone, Debug)]
pub struct SignaturePool {
    entries: Vec<InvariantSequence>,
}

impl SignaturePool {
    /// Validate and build a pool: equal lengths, no zero entries, and
    /// pairwise non-proportional signatures within each eigenvalue group.
    pub fn new(entries: Vec<InvariantSequence>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyPool);
        }
        let n = entries[0].len();
        for e in &entries {
            if e.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: e.len(),
                });
            }
            if e.is_zero() {
                return Err(Error::ZeroSignature);
            }
        }
        for i in 0..entries.len() {
            for j in (i + 1)..entries.len() {
                if entries[i].eigenvalue() != entries[j].eigenvalue() {
                    continue;
                }
                let a = entries[i].sequence();
                let b = entries[j].sequence();
                let cosine = a.inner(b).norm() / (a.norm() * b.norm());
                if cosine >= 1.0 - PROPORTIONALITY_GAP {
                    return Err(Error::ProportionalSignatures(i, j));
                }
            }
        }
        Ok(Self { entries })
    }

    /// All pool entries in insertion order.
    pub fn entries(&self) -> &[InvariantSequence] {
        &self.entries
    }

    /// Pool size.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Never empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Signature period.
    pub fn sequence_len(&self) -> usize {
        self.entries[0].len()
    }

    /// Indices of the entries belonging to one eigenvalue group.
    pub fn group_indices(&self, lambda: Eigenvalue) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.eigenvalue() == lambda)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Result of blind signature detection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolEstimate {
    /// Index of the detected signature within the pool.
    pub signature_index: usize,
    /// Estimated real coefficient (quotient mean of the winning candidate).
    pub a_hat: f64,
    /// The minimized variance score (non-negative).
    pub variance_score: f64,
}

/// Detect which pooled signature of `group` produced `component = a * x_k`
/// and estimate `a`.
///
/// For each candidate `x_i` the quotient `z_i[n] = component[n] / x_i[n]` is
/// formed over the indices where `|x_i[n]|` is not negligible; the candidate
/// with the smallest unbiased sample variance of `z_i` wins (ties resolve to
/// the lowest pool index) and `a_hat` is the quotient mean.  Noiseless inputs
/// give a winning variance at rounding level and an exact coefficient.
pub fn estimate_signature(
    component: &Sequence,
    pool: &SignaturePool,
    group: Eigenvalue,
) -> Result<SymbolEstimate> {
    let indices = pool.group_indices(group);
    if indices.is_empty() {
        return Err(Error::EmptyGroup(group));
    }
    estimate_among(component, pool, &indices)
}

/// Run the variance detector over an explicit candidate index list.
pub fn estimate_among(
    component: &Sequence,
    pool: &SignaturePool,
    candidate_indices: &[usize],
) -> Result<SymbolEstimate> {
    if candidate_indices.is_empty() {
        return Err(Error::EmptyPool);
    }
    let mut best: Option<(f64, usize, Complex64)> = None;
    for &index in candidate_indices {
        let x = pool.entries[index].sequence();
        if x.len() != component.len() {
            return Err(Error::LengthMismatch {
                left: component.len(),
                right: x.len(),
            });
        }
        let cutoff = DIVISION_MASK_REL * x.max_abs();
        let quotient: Vec<Complex64> = x
            .entries()
            .iter()
            .zip(component.entries())
            .filter(|(xe, _)| xe.norm() >= cutoff)
            .map(|(xe, ce)| ce / xe)
            .collect();
        if quotient.len() < 2 {
            return Err(Error::TooFewUsableSamples { index });
        }
        let count = quotient.len() as f64;
        let mean = quotient.iter().sum::<Complex64>() / count;
        let variance = quotient
            .iter()
            .map(|z| (z - mean).norm_sqr())
            .sum::<f64>()
            / (count - 1.0);
        if best.map_or(true, |(v, _, _)| variance < v) {
            best = Some((variance, index, mean));
        }
    }
    let (variance_score, signature_index, mean) = best.expect("candidate list non-empty");
    Ok(SymbolEstimate {
        signature_index,
        a_hat: mean.re,
        variance_score,
    })
}

// ---------------------------------------------------------------------------
// Noise injection (test and simulation plumbing)
// ---------------------------------------------------------------------------

/// Add zero-mean Gaussian noise of standard deviation `sigma` to every entry
/// (real part — the adder channel carries real samples).  Deterministic per
/// `seed`; `sigma = 0` returns the input unchanged.
pub fn add_noise(y: &ChannelOutput, sigma: f64, seed: u64) -> Result<ChannelOutput> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::InvalidSigma(sigma));
    }
    if sigma == 0.0 {
        return Ok(y.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = y
        .sequence()
        .entries()
        .iter()
        .map(|e| {
            let draw: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(e.re + sigma * draw, e.im)
        })
        .collect();
    Ok(ChannelOutput::new(Sequence::new(entries)?))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
