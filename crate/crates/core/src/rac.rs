//! Real adder channel: superposition of 2–4 user sequences and closed-form
//! separation at the receiver.
//!
//! Each user transmits an invariant sequence drawn from a *distinct*
//! eigenspace.  The channel output is the plain entrywise sum
//! `y = x_1 + … + x_k`.  Because `dft(y)` multiplies each component by its
//! own eigenvalue, a handful of DFT applications turns the mixture into a
//! solvable linear system with a Vandermonde coefficient matrix over
//! `{+1, -1, +j, -j}`, and every supported design has a closed-form solution
//! in terms of `y`, `Y = dft(y)` and their even/odd parts.
//!
//! Supported designs (user order is fixed, selections are not reordered):
//!
//! * two users — six eigenvalue pairs;
//! * three users — four triples;
//! * four users — the single full selection `(+1, -1, +j, -j)`.
//!
//! Decoders do not check that the inputs really were invariant: a receiver
//! only sees `y`.  Feeding a mixture that violates the eigenspace assignment
//! still reconstructs `y` as the sum of the outputs, but the per-user split
//! is meaningless.
//!
//! # Example
//!
//! ```
//! use invseq::eigen::representative_sequence;
//! use invseq::rac::{channel_superpose, decode2, EigenspaceSelection};
//! use invseq::Eigenvalue;
//!
//! let x1 = representative_sequence(Eigenvalue::PlusOne, 8).unwrap().into_sequence();
//! let x2 = representative_sequence(Eigenvalue::MinusOne, 8).unwrap().into_sequence();
//! let y = channel_superpose(&[x1.clone(), x2.clone()]).unwrap();
//!
//! let sel = EigenspaceSelection::pair(Eigenvalue::PlusOne, Eigenvalue::MinusOne).unwrap();
//! let (r1, r2) = decode2(&y, &sel).unwrap();
//! assert!((&r1 - &x1).norm() < 1e-10);
//! assert!((&r2 - &x2).norm() < 1e-10);
//! ```

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::seq::{dft, even_part, odd_part, Eigenvalue, Sequence};

use Eigenvalue::{MinusJ, MinusOne, PlusJ, PlusOne};

/// The six valid two-user designs, in table order.
pub const VALID_PAIRS: [[Eigenvalue; 2]; 6] = [
    [PlusOne, MinusOne],
    [PlusOne, PlusJ],
    [PlusOne, MinusJ],
    [MinusOne, PlusJ],
    [MinusOne, MinusJ],
    [PlusJ, MinusJ],
];

/// The four valid three-user designs, in table order.
pub const VALID_TRIPLES: [[Eigenvalue; 3]; 4] = [
    [PlusOne, MinusOne, PlusJ],
    [PlusOne, MinusOne, MinusJ],
    [PlusOne, PlusJ, MinusJ],
    [MinusOne, PlusJ, MinusJ],
];

/// The single valid four-user design.
pub const VALID_QUAD: [Eigenvalue; 4] = [PlusOne, MinusOne, PlusJ, MinusJ];

// ---------------------------------------------------------------------------
// EigenspaceSelection
// ---------------------------------------------------------------------------

/// An ordered assignment of users to distinct eigenspaces.
///
/// Only the designs listed in [`VALID_PAIRS`], [`VALID_TRIPLES`] and
/// [`VALID_QUAD`] are accepted; permuted variants such as `(-1, +1)` are
/// rejected rather than reordered, keeping user indices aligned with the
/// recovery formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenspaceSelection {
    lambdas: Vec<Eigenvalue>,
}

impl EigenspaceSelection {
    /// Validate an ordered tuple of 2–4 eigenvalues.
    pub fn new(lambdas: &[Eigenvalue]) -> Result<Self> {
        let ok = match lambdas.len() {
            2 => VALID_PAIRS.iter().any(|p| p == lambdas),
            3 => VALID_TRIPLES.iter().any(|t| t == lambdas),
            4 => VALID_QUAD == lambdas,
            n => return Err(Error::UserCount(n)),
        };
        if !ok {
            let shown: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
            return Err(Error::InvalidSelection(format!(
                "({}) is not one of the supported designs",
                shown.join(",")
            )));
        }
        Ok(Self {
            lambdas: lambdas.to_vec(),
        })
    }

    /// Two-user selection.
    pub fn pair(a: Eigenvalue, b: Eigenvalue) -> Result<Self> {
        Self::new(&[a, b])
    }

    /// Three-user selection.
    pub fn triple(a: Eigenvalue, b: Eigenvalue, c: Eigenvalue) -> Result<Self> {
        Self::new(&[a, b, c])
    }

    /// The unique four-user selection.
    pub fn quad() -> Self {
        Self {
            lambdas: VALID_QUAD.to_vec(),
        }
    }

    /// The assigned eigenvalues in user order.
    pub fn lambdas(&self) -> &[Eigenvalue] {
        &self.lambdas
    }

    /// Number of users in the design.
    pub fn user_count(&self) -> usize {
        self.lambdas.len()
    }
}

impl fmt::Display for EigenspaceSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambdas.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for EigenspaceSelection {
    type Err = Error;

    /// Parse a comma list such as `+1,-1,+j`.
    fn from_str(s: &str) -> Result<Self> {
        let lambdas = s
            .split(',')
            .map(|part| part.parse::<Eigenvalue>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(&lambdas)
    }
}

// ---------------------------------------------------------------------------
// ChannelOutput
// ---------------------------------------------------------------------------

/// The real-adder-channel output sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelOutput {
    y: Sequence,
}

impl ChannelOutput {
    /// Wrap a received channel sequence.
    pub fn new(y: Sequence) -> Self {
        Self { y }
    }

    /// The channel sequence.
    pub fn sequence(&self) -> &Sequence {
        &self.y
    }

    /// Period of the channel sequence.
    pub fn len(&self) -> usize {
        self.y.len()
    }

    /// Always false; see [`Sequence::is_empty`].
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unwrap into the plain sequence.
    pub fn into_sequence(self) -> Sequence {
        self.y
    }
}

/// Entrywise sum of 2–4 equal-length user sequences.
pub fn channel_superpose(users: &[Sequence]) -> Result<ChannelOutput> {
    if !(2..=4).contains(&users.len()) {
        return Err(Error::UserCount(users.len()));
    }
    let n = users[0].len();
    for u in &users[1..] {
        if u.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: u.len(),
            });
        }
    }
    let mut y = users[0].clone();
    for u in &users[1..] {
        y = &y + u;
    }
    Ok(ChannelOutput { y })
}

// ---------------------------------------------------------------------------
// Decoders
// ---------------------------------------------------------------------------

fn lin2(a: Complex64, u: &Sequence, b: Complex64, v: &Sequence) -> Sequence {
    &u.scaled(a) + &v.scaled(b)
}

fn lin3(
    a: Complex64,
    u: &Sequence,
    b: Complex64,
    v: &Sequence,
    c: Complex64,
    w: &Sequence,
) -> Sequence {
    &(&u.scaled(a) + &v.scaled(b)) + &w.scaled(c)
}

const J: Complex64 = Complex64::new(0.0, 1.0);
const HALF: Complex64 = Complex64::new(0.5, 0.0);
const HALF_J: Complex64 = Complex64::new(0.0, 0.5);
/// `1/(1-j)`
const INV_ONE_MINUS_J: Complex64 = Complex64::new(0.5, 0.5);
/// `1/(1+j)`
const INV_ONE_PLUS_J: Complex64 = Complex64::new(0.5, -0.5);

/// Two-user recovery.  With `Y = dft(y)`:
///
/// | selection  | user 1              | user 2          |
/// |------------|---------------------|-----------------|
/// | `+1,-1`    | `(y+Y)/2`           | `(y-Y)/2`       |
/// | `+1,+j`    | `(-jy+Y)/(1-j)`     | `(y-Y)/(1-j)`   |
/// | `+1,-j`    | `(jy+Y)/(1+j)`      | `(y-Y)/(1+j)`   |
/// | `-1,+j`    | `(jy-Y)/(1+j)`      | `(y+Y)/(1+j)`   |
/// | `-1,-j`    | `(-jy-Y)/(1-j)`     | `(y+Y)/(1-j)`   |
/// | `+j,-j`    | `(y-jY)/2`          | `(y+jY)/2`      |
///
/// In the noiseless case recovery is exact for all six designs; the forms
/// are verified against a generic linear-system solve in the test suite.
pub fn decode2(y: &ChannelOutput, sel: &EigenspaceSelection) -> Result<(Sequence, Sequence)> {
    if sel.user_count() != 2 {
        return Err(Error::InvalidSelection(format!(
            "decode2 needs a pair, got {} users",
            sel.user_count()
        )));
    }
    let yv = &y.y;
    let spectrum = dft(yv);
    let (l1, l2) = (sel.lambdas[0], sel.lambdas[1]);

    let (x1, x2) = match (l1, l2) {
        (PlusOne, MinusOne) => (
            lin2(HALF, yv, HALF, &spectrum),
            lin2(HALF, yv, -HALF, &spectrum),
        ),
        (PlusOne, PlusJ) => (
            lin2(-J * INV_ONE_MINUS_J, yv, INV_ONE_MINUS_J, &spectrum),
            lin2(INV_ONE_MINUS_J, yv, -INV_ONE_MINUS_J, &spectrum),
        ),
        (PlusOne, MinusJ) => (
            lin2(J * INV_ONE_PLUS_J, yv, INV_ONE_PLUS_J, &spectrum),
            lin2(INV_ONE_PLUS_J, yv, -INV_ONE_PLUS_J, &spectrum),
        ),
        (MinusOne, PlusJ) => (
            lin2(J * INV_ONE_PLUS_J, yv, -INV_ONE_PLUS_J, &spectrum),
            lin2(INV_ONE_PLUS_J, yv, INV_ONE_PLUS_J, &spectrum),
        ),
        (MinusOne, MinusJ) => (
            lin2(-J * INV_ONE_MINUS_J, yv, -INV_ONE_MINUS_J, &spectrum),
            lin2(INV_ONE_MINUS_J, yv, INV_ONE_MINUS_J, &spectrum),
        ),
        (PlusJ, MinusJ) => (
            lin2(HALF, yv, -HALF_J, &spectrum),
            lin2(HALF, yv, HALF_J, &spectrum),
        ),
        _ => unreachable!("selection validated at construction"),
    };
    Ok((x1, x2))
}

/// Three-user recovery via `E{y}`, `O{y}` (even/odd parts) and `Y = dft(y)`.
pub fn decode3(
    y: &ChannelOutput,
    sel: &EigenspaceSelection,
) -> Result<(Sequence, Sequence, Sequence)> {
    if sel.user_count() != 3 {
        return Err(Error::InvalidSelection(format!(
            "decode3 needs a triple, got {} users",
            sel.user_count()
        )));
    }
    let yv = &y.y;
    let spectrum = dft(yv);
    let even = even_part(yv);
    let odd = odd_part(yv);
    let key = (sel.lambdas[0], sel.lambdas[1], sel.lambdas[2]);

    let (x1, x2, x3) = match key {
        (PlusOne, MinusOne, PlusJ) => (
            lin3(HALF, &even, -HALF_J, &odd, HALF, &spectrum),
            lin3(HALF, &even, HALF_J, &odd, -HALF, &spectrum),
            odd,
        ),
        (PlusOne, MinusOne, MinusJ) => (
            lin3(HALF, &even, HALF_J, &odd, HALF, &spectrum),
            lin3(HALF, &even, -HALF_J, &odd, -HALF, &spectrum),
            odd,
        ),
        (PlusOne, PlusJ, MinusJ) => (
            even.clone(),
            lin3(HALF, &odd, HALF_J, &even, -HALF_J, &spectrum),
            lin3(HALF, &odd, -HALF_J, &even, HALF_J, &spectrum),
        ),
        (MinusOne, PlusJ, MinusJ) => (
            even.clone(),
            lin3(HALF, &odd, -HALF_J, &even, -HALF_J, &spectrum),
            lin3(HALF, &odd, HALF_J, &even, HALF_J, &spectrum),
        ),
        _ => unreachable!("selection validated at construction"),
    };
    Ok((x1, x2, x3))
}

/// Four-user recovery for the fixed order `(+1, -1, +j, -j)`:
///
/// ```text
/// x1 = (E{y} + E{Y})/2        x3 = (O{y} - j·O{Y})/2
/// x2 = (E{y} - E{Y})/2        x4 = (O{y} + j·O{Y})/2
/// ```
pub fn decode4(y: &ChannelOutput) -> (Sequence, Sequence, Sequence, Sequence) {
    let yv = &y.y;
    let spectrum = dft(yv);
    let even_y = even_part(yv);
    let odd_y = odd_part(yv);
    let even_s = even_part(&spectrum);
    let odd_s = odd_part(&spectrum);

    (
        lin2(HALF, &even_y, HALF, &even_s),
        lin2(HALF, &even_y, -HALF, &even_s),
        lin2(HALF, &odd_y, -HALF_J, &odd_s),
        lin2(HALF, &odd_y, HALF_J, &odd_s),
    )
}

/// Dispatch to the decoder matching the selection arity.
pub fn decode(y: &ChannelOutput, sel: &EigenspaceSelection) -> Vec<Sequence> {
    match sel.user_count() {
        2 => {
            let (a, b) = decode2(y, sel).expect("arity checked");
            vec![a, b]
        }
        3 => {
            let (a, b, c) = decode3(y, sel).expect("arity checked");
            vec![a, b, c]
        }
        4 => {
            let (a, b, c, d) = decode4(y);
            vec![a, b, c, d]
        }
        _ => unreachable!("selection validated at construction"),
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
