//! JSON encodings for the public data types. All indices are 1-based on the
//! wire, coefficients are exact rational strings ("p/q" or "p"), and tensor
//! coefficients are arrays of h-power coefficients from h⁰ upward. Shorter
//! coefficient arrays are padded with zeros up to the working truncation
//! order; longer ones are rejected.

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalars::{format_rational, parse_rational, rat, HSeries};
use crate::twist::{NormalForm, TwistedEndo};
use crate::uea::{Ctx, Elem, Mono};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// One bracket row on the wire: (i, j, [(k, coefficient), ...]) meaning
/// [xᵢ, xⱼ] = Σ coefficient·xₖ, with 1-based indices.
pub type BracketRowJson = (usize, usize, Vec<(usize, String)>);

/// A Lie algebra by structure constants. Omitted pairs default to zero,
/// and the (j, i) entry is filled in by antisymmetry when absent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieJson {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<String>>,
    pub brackets: Vec<BracketRowJson>,
}

pub fn lie_to_json(alg: &LieAlgebra) -> LieJson {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let row = alg.bracket(i, j);
            let terms: Vec<(usize, String)> = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k + 1, format_rational(c)))
                .collect();
            if !terms.is_empty() {
                brackets.push((i + 1, j + 1, terms));
            }
        }
    }
    LieJson {
        dim: n,
        basis: Some(alg.names().to_vec()),
        brackets,
    }
}

pub fn lie_from_json(j: &LieJson) -> Result<LieAlgebra> {
    let n = j.dim;
    if n == 0 {
        return Err(Error::config("algebra dimension must be positive"));
    }
    let names: Vec<String> = match &j.basis {
        Some(v) => {
            if v.len() != n {
                return Err(Error::config("basis names must match the dimension"));
            }
            v.clone()
        }
        None => (1..=n).map(|i| format!("x{}", i)).collect(),
    };
    let mut c = vec![vec![vec![rat(0, 1); n]; n]; n];
    let mut given = vec![vec![false; n]; n];
    for (i1, j1, terms) in &j.brackets {
        if *i1 == 0 || *j1 == 0 || *i1 > n || *j1 > n {
            return Err(Error::config(format!(
                "bracket index out of range: ({}, {})",
                i1, j1
            )));
        }
        let (i, jj) = (i1 - 1, j1 - 1);
        if given[i][jj] {
            return Err(Error::config(format!(
                "bracket ({}, {}) given twice",
                i1, j1
            )));
        }
        given[i][jj] = true;
        let mut row = vec![rat(0, 1); n];
        for (k1, s) in terms {
            if *k1 == 0 || *k1 > n {
                return Err(Error::config(format!("bracket target {} out of range", k1)));
            }
            row[k1 - 1] = &row[k1 - 1] + &parse_rational(s)?;
        }
        c[i][jj] = row;
    }
    // antisymmetric completion for pairs given in one order only
    for i in 0..n {
        for jj in 0..n {
            if given[i][jj] && !given[jj][i] {
                c[jj][i] = c[i][jj].iter().map(|x| -x).collect();
            }
        }
    }
    LieAlgebra::new(names, c)
}

pub fn parse_lie(s: &str) -> Result<LieAlgebra> {
    let j: LieJson =
        serde_json::from_str(s).map_err(|e| Error::config(format!("bad algebra JSON: {e}")))?;
    lie_from_json(&j)
}

pub fn render_lie(alg: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&lie_to_json(alg)).expect("serialization cannot fail")
}

/// One tensor term: exponent vectors per slot plus the h-coefficients of its
/// scalar, listed from h⁰ upward.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub mons: Vec<Vec<u32>>,
    pub coef: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

pub fn elem_to_json(x: &Elem) -> TensorJson {
    let terms = x
        .terms()
        .map(|(t, c)| TermJson {
            mons: t.clone(),
            coef: c.coeffs().iter().map(format_rational).collect(),
        })
        .collect();
    TensorJson {
        arity: x.arity(),
        terms,
    }
}

pub fn elem_from_json(ctx: &Arc<Ctx>, j: &TensorJson) -> Result<Elem> {
    let order = ctx.h_order();
    let mut out = Elem::zero(ctx, j.arity);
    for term in &j.terms {
        if term.mons.len() != j.arity {
            return Err(Error::config("term has the wrong number of slots"));
        }
        for m in &term.mons {
            if m.len() != ctx.dim() {
                return Err(Error::config(
                    "exponent vector length must match the algebra dimension",
                ));
            }
        }
        if term.coef.len() > order + 1 {
            return Err(Error::config(format!(
                "coefficient has {} h-entries but the truncation order is {}",
                term.coef.len(),
                order
            )));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        for s in &term.coef {
            coeffs.push(parse_rational(s)?);
        }
        coeffs.resize(order + 1, rat(0, 1));
        let tuple: Vec<Mono> = term.mons.clone();
        out = out.add(&Elem::from_terms(
            ctx,
            j.arity,
            [(tuple, HSeries::from_coeffs(coeffs))],
        ));
    }
    Ok(out)
}

pub fn parse_elem(ctx: &Arc<Ctx>, s: &str) -> Result<Elem> {
    let j: TensorJson =
        serde_json::from_str(s).map_err(|e| Error::config(format!("bad tensor JSON: {e}")))?;
    elem_from_json(ctx, &j)
}

pub fn render_elem(x: &Elem) -> String {
    serde_json::to_string_pretty(&elem_to_json(x)).expect("serialization cannot fail")
}

fn display_mono(names: &[String], m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn display_series(c: &HSeries) -> (String, bool) {
    let mut parts = Vec::new();
    for (l, q) in c.coeffs().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let qs = format_rational(q);
        parts.push(match l {
            0 => qs,
            1 if qs == "1" => "h".to_string(),
            1 if qs == "-1" => "-h".to_string(),
            1 => format!("{} h", qs),
            _ if qs == "1" => format!("h^{}", l),
            _ if qs == "-1" => format!("-h^{}", l),
            _ => format!("{} h^{}", qs, l),
        });
    }
    let single = parts.len() == 1;
    (parts.join(" + "), single)
}

/// Renders a tensor as a readable linear combination, with generator names,
/// `x` between tensor slots, and explicit powers of h.
pub fn display_elem(x: &Elem) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let names = x.ctx().lie().names();
    let mut parts = Vec::new();
    for (tuple, c) in x.terms() {
        let mono = tuple
            .iter()
            .map(|m| display_mono(names, m))
            .collect::<Vec<_>>()
            .join(" x ");
        let (series, single) = display_series(c);
        let all_unit = tuple.iter().all(|m| m.iter().all(|&e| e == 0));
        parts.push(if all_unit {
            if single { series } else { format!("({})", series) }
        } else if series == "1" {
            mono
        } else if series == "-1" {
            format!("-{}", mono)
        } else if single {
            format!("{} {}", series, mono)
        } else {
            format!("({}) {}", series, mono)
        });
    }
    parts.join(" + ")
}

/// A twisted endomorphism: generator images plus the twist.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndoJson {
    pub images: Vec<TensorJson>,
    pub twist: TensorJson,
}

pub fn endo_to_json(t: &TwistedEndo) -> EndoJson {
    EndoJson {
        images: t.images().iter().map(elem_to_json).collect(),
        twist: elem_to_json(t.twist()),
    }
}

pub fn endo_from_json(ctx: &Arc<Ctx>, j: &EndoJson) -> Result<TwistedEndo> {
    let images: Result<Vec<Elem>> = j.images.iter().map(|i| elem_from_json(ctx, i)).collect();
    TwistedEndo::new(ctx, images?, elem_from_json(ctx, &j.twist)?)
}

pub fn parse_endo(ctx: &Arc<Ctx>, s: &str) -> Result<TwistedEndo> {
    let j: EndoJson = serde_json::from_str(s)
        .map_err(|e| Error::config(format!("bad endomorphism JSON: {e}")))?;
    endo_from_json(ctx, &j)
}

pub fn render_endo(t: &TwistedEndo) -> String {
    serde_json::to_string_pretty(&endo_to_json(t)).expect("serialization cannot fail")
}

/// A normal form: skew coefficients ordered by h-power from h¹ upward, plus
/// the gauge that moves the input onto the reconstructed product.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub xs: Vec<TensorJson>,
    pub gauge: TensorJson,
}

pub fn normal_form_to_json(nf: &NormalForm) -> NormalFormJson {
    NormalFormJson {
        xs: nf.xs.iter().map(elem_to_json).collect(),
        gauge: elem_to_json(&nf.gauge),
    }
}

pub fn normal_form_from_json(ctx: &Arc<Ctx>, j: &NormalFormJson) -> Result<NormalForm> {
    let xs: Result<Vec<Elem>> = j.xs.iter().map(|x| elem_from_json(ctx, x)).collect();
    Ok(NormalForm {
        xs: xs?,
        gauge: elem_from_json(ctx, &j.gauge)?,
    })
}

/// A rational matrix, row-major.
pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Result<Matrix> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect())
        .collect()
}
