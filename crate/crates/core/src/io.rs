//! File formats: JSON/CSV sequence serialization, tagged invariant-sequence
//! files, signature pools, mapping-matrix export and simulation configs.
//!
//! A plain sequence serializes as a JSON array of `[re, im]` pairs, or as CSV
//! with columns `index,re,im`.  Both round-trip losslessly at double
//! precision: JSON uses shortest round-trip decimals, CSV prints 17
//! significant digits.
//!
//! Generated invariant sequences are written *tagged*, embedding the
//! eigenvalue and the invariance residual alongside the data, and every
//! loader in this module re-verifies the eigenvector equation rather than
//! trusting the stored tag.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::de::Error as SerdeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::eigen::{InvariantSequence, MappingMatrix, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::rac::EigenspaceSelection;
use crate::seq::{Eigenvalue, Sequence};
use crate::txrx::SignaturePool;

/// Format floats with 17 significant digits (enough to round-trip a double).
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

// ---------------------------------------------------------------------------
// Serde representations
// ---------------------------------------------------------------------------

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(f64, f64)> = self.entries().iter().map(|e| (e.re, e.im)).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Sequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(f64, f64)>::deserialize(deserializer)?;
        let entries = pairs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        Sequence::new(entries).map_err(D::Error::custom)
    }
}

impl Serialize for Eigenvalue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Eigenvalue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

impl Serialize for EigenspaceSelection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EigenspaceSelection {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Plain sequences
// ---------------------------------------------------------------------------

/// Serialize a sequence as a JSON array of `[re, im]` pairs.
pub fn sequence_to_json(x: &Sequence) -> String {
    serde_json::to_string(x).expect("sequence serialization cannot fail")
}

/// Parse a sequence from the JSON array form.
pub fn sequence_from_json(text: &str) -> Result<Sequence> {
    Ok(serde_json::from_str(text)?)
}

/// Write CSV with header `index,re,im`, one row per entry.
pub fn write_sequence_csv<W: Write>(writer: W, x: &Sequence) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["index", "re", "im"])?;
    for (i, e) in x.entries().iter().enumerate() {
        w.write_record([i.to_string(), format_f64(e.re), format_f64(e.im)])?;
    }
    w.flush()?;
    Ok(())
}

/// Read the `index,re,im` CSV form; `#`-prefixed lines are skipped.
pub fn read_sequence_csv<R: Read>(reader: R) -> Result<Sequence> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut entries = Vec::new();
    for record in r.records() {
        let record = record?;
        if record.len() < 3 {
            return Err(Error::FileFormat(format!(
                "expected 3 CSV columns, found {}",
                record.len()
            )));
        }
        let re: f64 = record[1]
            .trim()
            .parse()
            .map_err(|_| Error::FileFormat(format!("bad float {:?}", &record[1])))?;
        let im: f64 = record[2]
            .trim()
            .parse()
            .map_err(|_| Error::FileFormat(format!("bad float {:?}", &record[2])))?;
        entries.push(Complex64::new(re, im));
    }
    Sequence::new(entries)
}

// ---------------------------------------------------------------------------
// Tagged invariant sequences
// ---------------------------------------------------------------------------

/// An invariant sequence as stored on disk: data plus eigenvalue tag and the
/// residual measured when the file was written.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TaggedSequence {
    pub lambda: Eigenvalue,
    pub residual: f64,
    pub entries: Sequence,
}

impl TaggedSequence {
    /// Tag an invariant sequence with its current residual.
    pub fn from_invariant(inv: &InvariantSequence) -> Self {
        Self {
            lambda: inv.eigenvalue(),
            residual: inv.residual(),
            entries: inv.sequence().clone(),
        }
    }

    /// Re-verify and convert back into a validated [`InvariantSequence`].
    pub fn into_invariant(self) -> Result<InvariantSequence> {
        InvariantSequence::with_tolerance(self.entries, self.lambda, DEFAULT_TOLERANCE)
    }
}

/// Serialize a tagged sequence to JSON.
pub fn tagged_to_json(tagged: &TaggedSequence) -> String {
    serde_json::to_string_pretty(tagged).expect("tagged serialization cannot fail")
}

/// Parse and re-verify a tagged sequence from JSON.
pub fn tagged_from_json(text: &str) -> Result<InvariantSequence> {
    let tagged: TaggedSequence = serde_json::from_str(text)?;
    tagged.into_invariant()
}

/// Write a tagged sequence as CSV: `# lambda` / `# residual` comment lines
/// followed by the `index,re,im` table.
pub fn write_tagged_csv<W: Write>(mut writer: W, tagged: &TaggedSequence) -> Result<()> {
    writeln!(writer, "# lambda,{}", tagged.lambda)?;
    writeln!(writer, "# residual,{}", format_f64(tagged.residual))?;
    write_sequence_csv(writer, &tagged.entries)
}

/// Read the tagged CSV form and re-verify the eigenvector equation.
pub fn read_tagged_csv<R: Read>(mut reader: R) -> Result<InvariantSequence> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut lambda = None;
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        let body = line.trim_start_matches('#').trim();
        if let Some(value) = body.strip_prefix("lambda,") {
            lambda = Some(value.trim().parse::<Eigenvalue>()?);
        }
    }
    let lambda =
        lambda.ok_or_else(|| Error::FileFormat("missing '# lambda,<value>' line".into()))?;
    let seq = read_sequence_csv(text.as_bytes())?;
    InvariantSequence::with_tolerance(seq, lambda, DEFAULT_TOLERANCE)
}

// ---------------------------------------------------------------------------
// Signature pools
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PoolEntryFile {
    lambda: Eigenvalue,
    entries: Sequence,
}

/// Serialize a pool as a JSON array of `{lambda, entries}` objects.
pub fn pool_to_json(pool: &SignaturePool) -> String {
    let entries: Vec<PoolEntryFile> = pool
        .entries()
        .iter()
        .map(|e| PoolEntryFile {
            lambda: e.eigenvalue(),
            entries: e.sequence().clone(),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("pool serialization cannot fail")
}

/// Parse a pool file; every entry is re-verified against its eigenvalue tag
/// and the pool invariants (grouping, non-proportionality) are re-checked.
pub fn pool_from_json(text: &str) -> Result<SignaturePool> {
    let raw: Vec<PoolEntryFile> = serde_json::from_str(text)?;
    let entries = raw
        .into_iter()
        .map(|e| InvariantSequence::with_tolerance(e.entries, e.lambda, DEFAULT_TOLERANCE))
        .collect::<Result<Vec<_>>>()?;
    SignaturePool::new(entries)
}

// ---------------------------------------------------------------------------
// Mapping matrices
// ---------------------------------------------------------------------------

/// Serialize a mapping matrix as `{k, source_lambda, N, columns}`.
pub fn matrix_to_json(matrix: &MappingMatrix) -> String {
    serde_json::to_string_pretty(matrix).expect("matrix serialization cannot fail")
}

/// Parse a mapping matrix and re-verify every column's eigenvector residual.
pub fn matrix_from_json(text: &str) -> Result<MappingMatrix> {
    let matrix: MappingMatrix = serde_json::from_str(text)?;
    let rebuilt = MappingMatrix::from_parts(
        matrix.k(),
        matrix.source_lambda(),
        matrix.order(),
        matrix.columns().to_vec(),
    )?;
    rebuilt.verify(DEFAULT_TOLERANCE)?;
    Ok(rebuilt)
}

// ---------------------------------------------------------------------------
// Simulation config
// ---------------------------------------------------------------------------

/// Simulation parameters as stored in a config file:
/// `{b, E_max, N, selection, pool_file}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimulateConfig {
    /// D/A resolution in bits.
    pub b: u32,
    /// Channel energy cap.
    #[serde(rename = "E_max")]
    pub e_max: f64,
    /// Sequence period.
    #[serde(rename = "N")]
    pub n: usize,
    /// Eigenspace design, e.g. `"+1,-1,+j"`.
    pub selection: EigenspaceSelection,
    /// Optional signature pool; defaults to the built-in representative rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pool_file: Option<String>,
}

impl SimulateConfig {
    /// Parse and sanity-check a config file.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimulateConfig = serde_json::from_str(text)?;
        if cfg.b < 1 || cfg.b > 32 {
            return Err(Error::InvalidConfig(format!("b = {} outside 1..=32", cfg.b)));
        }
        if !(cfg.e_max.is_finite() && cfg.e_max > 0.0) {
            return Err(Error::InvalidConfig(format!("E_max = {}", cfg.e_max)));
        }
        if cfg.n < 2 {
            return Err(Error::InvalidConfig(format!("N = {} below 2", cfg.n)));
        }
        Ok(cfg)
    }

    /// Serialize to pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
