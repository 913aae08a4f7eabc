//! JSON file formats for complexes, triples and ideals.
//!
//! Matrices are row-major arrays of rows. F2 scalars are `0`/`1`; GF(4)
//! scalars are pairs `[a, b]` meaning `a + b w`. Empty matrices are written
//! as `[]` and take their shape from the term dimensions.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bgg::{RepLabel, Triple};
use crate::complex::{ModuleRep, PerfectComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ideal::GradedIdeal;
use crate::linalg::Matrix;
use crate::skew::Group;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermFile {
    pub dim: usize,
    pub act_y1: Value,
    pub act_y2: Value,
    pub act_q: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub field: Field,
    pub group: Group,
    pub lo: i64,
    pub hi: i64,
    pub terms: Vec<TermFile>,
    pub diffs: Vec<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleFile {
    #[serde(default = "default_field")]
    pub field: Field,
    #[serde(default = "default_group")]
    pub group: Group,
    #[serde(default)]
    pub l: i64,
    #[serde(rename = "L", default = "default_label")]
    pub label: String,
    #[serde(rename = "J")]
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealFile {
    #[serde(default = "default_field")]
    pub field: Field,
    #[serde(rename = "J")]
    pub ideal: Vec<String>,
}

fn default_field() -> Field {
    Field::F2
}

fn default_label() -> String {
    "triv".into()
}

fn default_group() -> Group {
    Group::C3
}

fn scalar_to_json(field: Field, s: Scalar) -> Value {
    match field {
        Field::F2 => Value::from(s.bits()),
        Field::F4 => Value::from(vec![s.lo() as u8, s.hi() as u8]),
    }
}

fn bit(v: &Value) -> Result<bool> {
    match v.as_u64() {
        Some(0) => Ok(false),
        Some(1) => Ok(true),
        _ => Err(Error::Parse(format!("expected 0 or 1, found {v}"))),
    }
}

fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    match (field, v) {
        (Field::F2, _) => Ok(Scalar::from_bool(bit(v)?)),
        (Field::F4, Value::Array(pair)) if pair.len() == 2 => Ok(Scalar::from_bits(bit(&pair[0])?, bit(&pair[1])?)),
        (Field::F4, _) => Err(Error::Parse(format!("expected a GF(4) pair [a, b], found {v}"))),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let field = m.field();
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array((0..r.len()).map(|c| scalar_to_json(field, r.get(c))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(field: Field, rows: usize, cols: usize, v: &Value) -> Result<Matrix> {
    let Value::Array(rs) = v else {
        return Err(Error::Parse(format!("expected a matrix, found {v}")));
    };
    if rows == 0 || cols == 0 {
        return if rs.iter().all(|r| r.as_array().is_some_and(Vec::is_empty)) && (rs.is_empty() || rs.len() == rows) {
            Ok(Matrix::zero(field, rows, cols))
        } else {
            Err(Error::Dimension(format!("expected an empty {rows}x{cols} matrix")))
        };
    }
    if rs.len() != rows {
        return Err(Error::Dimension(format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut m = Matrix::zero(field, rows, cols);
    for (i, r) in rs.iter().enumerate() {
        let entries = r.as_array().ok_or_else(|| Error::Parse(format!("row {i} is not an array")))?;
        if entries.len() != cols {
            return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", entries.len())));
        }
        for (j, e) in entries.iter().enumerate() {
            m.set(i, j, scalar_from_json(field, e)?);
        }
    }
    Ok(m)
}

impl ComplexFile {
    pub fn from_complex(c: &PerfectComplex) -> ComplexFile {
        ComplexFile {
            field: c.field,
            group: c.group,
            lo: c.lo,
            hi: c.hi(),
            terms: c
                .terms
                .iter()
                .map(|m| TermFile {
                    dim: m.dim(),
                    act_y1: matrix_to_json(&m.act_y1),
                    act_y2: matrix_to_json(&m.act_y2),
                    act_q: matrix_to_json(&m.act_q),
                })
                .collect(),
            diffs: c.diffs.iter().map(matrix_to_json).collect(),
        }
    }

    /// Decode and validate.
    pub fn to_complex(&self) -> Result<PerfectComplex> {
        let f = self.field;
        if self.hi - self.lo + 1 != self.terms.len() as i64 && !(self.terms.is_empty() && self.hi < self.lo) {
            return Err(Error::Dimension(format!(
                "degrees {}..={} need {} terms, found {}",
                self.lo,
                self.hi,
                self.hi - self.lo + 1,
                self.terms.len()
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let n = t.dim;
                Ok(ModuleRep::new(
                    matrix_from_json(f, n, n, &t.act_y1)?,
                    matrix_from_json(f, n, n, &t.act_y2)?,
                    matrix_from_json(f, n, n, &t.act_q)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        if self.diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, found {}",
                terms.len(),
                terms.len().saturating_sub(1),
                self.diffs.len()
            )));
        }
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| matrix_from_json(f, terms[i + 1].dim(), terms[i].dim(), d))
            .collect::<Result<Vec<_>>>()?;
        PerfectComplex::new(f, self.group, self.lo, terms, diffs)
    }
}

impl TripleFile {
    pub fn from_triple(t: &Triple, group: Group) -> TripleFile {
        TripleFile {
            field: t.field(),
            group,
            l: t.l,
            label: t.label.to_string(),
            ideal: t.ideal.minimal_generators().iter().map(ToString::to_string).collect(),
        }
    }

    /// Decode and check that the triple is admissible for its group.
    pub fn to_triple(&self) -> Result<(Triple, Group)> {
        let gens: Vec<&str> = self.ideal.iter().map(String::as_str).collect();
        let ideal = GradedIdeal::parse(self.field, &gens)?;
        let label: RepLabel = self.label.parse()?;
        let t = Triple::new(self.l, label, ideal);
        t.check(self.group)?;
        Ok((t, self.group))
    }
}

impl IdealFile {
    pub fn from_ideal(j: &GradedIdeal) -> IdealFile {
        IdealFile { field: j.field(), ideal: j.minimal_generators().iter().map(ToString::to_string).collect() }
    }

    pub fn to_ideal(&self) -> Result<GradedIdeal> {
        let gens: Vec<&str> = self.ideal.iter().map(String::as_str).collect();
        GradedIdeal::parse(self.field, &gens)
    }
}

/// Pretty JSON with every innermost array (a matrix row or a GF(4) pair)
/// on one line.
pub fn to_json_string<T: Serialize>(x: &T) -> Result<String> {
    let v = serde_json::to_value(x)?;
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && (!x.is_array() || is_flat_scalar_pair(x))),
        _ => true,
    }
}

fn is_flat_scalar_pair(v: &Value) -> bool {
    v.as_array().is_some_and(|xs| xs.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push('}');
        }
        Value::Array(xs) if !xs.is_empty() && !is_flat(v) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                if i + 1 < xs.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn complex_to_json(c: &PerfectComplex) -> Result<String> {
    to_json_string(&ComplexFile::from_complex(c))
}

pub fn complex_from_json(s: &str) -> Result<PerfectComplex> {
    serde_json::from_str::<ComplexFile>(s)?.to_complex()
}

pub fn triple_to_json(t: &Triple, group: Group) -> Result<String> {
    to_json_string(&TripleFile::from_triple(t, group))
}

pub fn triple_from_json(s: &str) -> Result<(Triple, Group)> {
    serde_json::from_str::<TripleFile>(s)?.to_triple()
}

pub fn ideal_to_json(j: &GradedIdeal) -> Result<String> {
    to_json_string(&IdealFile::from_ideal(j))
}

pub fn ideal_from_json(s: &str) -> Result<GradedIdeal> {
    serde_json::from_str::<IdealFile>(s)?.to_ideal()
}

/// A command input: a complex, or a triple to be realized.
#[derive(Clone, Debug)]
pub enum Input {
    Complex(PerfectComplex),
    Triple(Triple, Group),
}

/// Decide the file kind by its keys (`terms` for complexes, `J` for
/// triples).
pub fn read_input(s: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(s)?;
    if v.get("terms").is_some() {
        Ok(Input::Complex(serde_json::from_value::<ComplexFile>(v)?.to_complex()?))
    } else if v.get("J").is_some() {
        let (t, g) = serde_json::from_value::<TripleFile>(v)?.to_triple()?;
        Ok(Input::Triple(t, g))
    } else {
        Err(Error::Parse("expected a complex (with \"terms\") or a triple (with \"J\")".into()))
    }
}
