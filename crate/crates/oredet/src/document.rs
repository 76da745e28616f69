//! JSON documents: the matrix file format and serialized certificates.
//!
//! Matrix files hold expression strings, not coefficient arrays, so
//! fixtures stay human-writable and certificates self-documenting:
//!
//! ```json
//! {"n": 2, "entries": [["d", "d"], ["d", "d+1"]], "meta": {"seed": 42}}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::dd1::{Dd1Certificate, LeadingSplit, RelationVector, UniformForm};
use crate::dieudonne::DieudonneDet;
use crate::error::{Error, Result};
use crate::expr::{parse_operator, parse_poly, parse_ratfunc, render_operator};
use crate::linalg::FuncMatrix;
use crate::majorant::Majorant;
use crate::matrix::OreMatrix;
use crate::order::OrderValue;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// The on-disk matrix document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Map<String, Value>>,
}

impl MatrixDocument {
    /// Renders a matrix into document form with optional metadata.
    pub fn from_matrix(m: &OreMatrix, meta: Option<Map<String, Value>>) -> Self {
        MatrixDocument {
            n: m.size(),
            entries: m
                .rows()
                .map(|row| row.iter().map(render_operator).collect())
                .collect(),
            meta,
        }
    }

    /// Parses and validates the grid into a matrix.
    pub fn to_matrix(&self) -> Result<OreMatrix> {
        if self.entries.len() != self.n {
            return Err(Error::Document(format!(
                "expected {} rows, found {}",
                self.n,
                self.entries.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.n);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.n {
                return Err(Error::Document(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    self.n
                )));
            }
            let mut parsed = Vec::with_capacity(self.n);
            for (j, text) in row.iter().enumerate() {
                let op = parse_operator(text).map_err(|e| {
                    Error::Document(format!("entry ({}, {}): {e}", i + 1, j + 1))
                })?;
                parsed.push(op);
            }
            rows.push(parsed);
        }
        OreMatrix::from_rows(rows)
    }
}

/// Parses a matrix document from a JSON string.
pub fn parse_matrix_str(text: &str) -> Result<OreMatrix> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_matrix()
}

/// Reads and parses a matrix document from a file.
pub fn parse_matrix_file(path: &Path) -> Result<OreMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix_str(&text)
}

fn grid_strings(m: &FuncMatrix) -> Vec<Vec<String>> {
    m.rows()
        .map(|row| row.iter().map(RatFunc::to_string).collect())
        .collect()
}

fn parse_grid(grid: &[Vec<String>]) -> Result<FuncMatrix> {
    let rows = grid
        .iter()
        .map(|row| row.iter().map(|s| parse_ratfunc(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FuncMatrix::from_rows(rows)
}

/// Serialized majorant: the `(N, h)` vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MajorantDoc {
    #[serde(rename = "N")]
    pub col_orders: Vec<i64>,
    pub h: Vec<i64>,
}

impl From<&Majorant> for MajorantDoc {
    fn from(m: &Majorant) -> Self {
        MajorantDoc {
            col_orders: m.col_orders.clone(),
            h: m.row_orders.clone(),
        }
    }
}

impl From<&MajorantDoc> for Majorant {
    fn from(d: &MajorantDoc) -> Self {
        Majorant::new(d.col_orders.clone(), d.h.clone())
    }
}

/// Serialized form of a dd = 1 certificate; every operator and
/// polynomial is a canonical expression string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub input: MatrixDocument,
    pub det1: String,
    /// Order of the determinant; `null` encodes `-infinity`.
    pub d: Option<i64>,
    pub tord: i64,
    pub dd: i64,
    pub majorant: MajorantDoc,
    pub uniform_matrix: Vec<Vec<String>>,
    #[serde(rename = "uniform_N")]
    pub uniform_col_order: i64,
    #[serde(rename = "uniform_h")]
    pub uniform_row_order: i64,
    pub col_pads: Vec<i64>,
    pub row_pads: Vec<i64>,
    pub leading: Vec<Vec<String>>,
    pub subleading: Vec<Vec<String>>,
    pub relation: Vec<String>,
    pub relation_pivot: usize,
    pub row_swap: Option<usize>,
    pub sign: i32,
    pub char_matrix: Vec<Vec<String>>,
    pub char_det: String,
    pub summand_dets: Vec<String>,
    pub summand_quotients: Vec<String>,
    pub result: String,
}

impl From<&Dd1Certificate> for CertificateDocument {
    fn from(c: &Dd1Certificate) -> Self {
        CertificateDocument {
            input: MatrixDocument::from_matrix(&c.input, None),
            det1: c.det.coeff.to_string(),
            d: c.det.order.finite(),
            tord: c.tord,
            dd: c.dd,
            majorant: (&c.majorant).into(),
            uniform_matrix: c
                .uniform
                .matrix
                .rows()
                .map(|row| row.iter().map(render_operator).collect())
                .collect(),
            uniform_col_order: c.uniform.col_order,
            uniform_row_order: c.uniform.row_order,
            col_pads: c.uniform.col_pads.clone(),
            row_pads: c.uniform.row_pads.clone(),
            leading: grid_strings(&c.split.leading),
            subleading: grid_strings(&c.split.subleading),
            relation: c.relation.coeffs.iter().map(Poly::to_string).collect(),
            relation_pivot: c.relation.pivot,
            row_swap: c.row_swap,
            sign: c.sign,
            char_matrix: grid_strings(&c.char_matrix),
            char_det: c.char_det.to_string(),
            summand_dets: c.summand_dets.iter().map(RatFunc::to_string).collect(),
            summand_quotients: c
                .summand_quotients
                .iter()
                .map(Poly::to_string)
                .collect(),
            result: c.result.to_string(),
        }
    }
}

impl CertificateDocument {
    /// Reconstructs the in-memory certificate for re-verification.
    pub fn to_certificate(&self) -> Result<Dd1Certificate> {
        let order = match self.d {
            Some(v) => OrderValue::Finite(v),
            None => OrderValue::NegInf,
        };
        let uniform_rows = self
            .uniform_matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_operator(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Dd1Certificate {
            input: self.input.to_matrix()?,
            det: DieudonneDet {
                coeff: parse_ratfunc(&self.det1)?,
                order,
            },
            tord: self.tord,
            dd: self.dd,
            majorant: (&self.majorant).into(),
            uniform: UniformForm {
                matrix: OreMatrix::from_rows(uniform_rows)?,
                col_order: self.uniform_col_order,
                row_order: self.uniform_row_order,
                col_pads: self.col_pads.clone(),
                row_pads: self.row_pads.clone(),
            },
            split: LeadingSplit {
                leading: parse_grid(&self.leading)?,
                subleading: parse_grid(&self.subleading)?,
            },
            relation: RelationVector {
                coeffs: self
                    .relation
                    .iter()
                    .map(|s| parse_poly(s))
                    .collect::<Result<Vec<_>>>()?,
                pivot: self.relation_pivot,
            },
            row_swap: self.row_swap,
            sign: self.sign,
            char_matrix: parse_grid(&self.char_matrix)?,
            char_det: parse_ratfunc(&self.char_det)?,
            summand_dets: self
                .summand_dets
                .iter()
                .map(|s| parse_ratfunc(s))
                .collect::<Result<Vec<_>>>()?,
            summand_quotients: self
                .summand_quotients
                .iter()
                .map(|s| parse_poly(s))
                .collect::<Result<Vec<_>>>()?,
            result: parse_poly(&self.result)?,
        })
    }
}
