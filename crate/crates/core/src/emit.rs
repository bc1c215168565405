//! Output formats: LaTeX block arrays, versioned JSON documents and DOT.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::complex::{BasisLabel, DifferentialMatrix};
use crate::error::{Error, Result};
use crate::field::{format_rational, rational_is_negative};
use crate::kunz::KunzPoset;
use crate::ring::RingElement;
use crate::symbolic::SymbolicMatrix;

pub const SCHEMA: &str = "nsres/1";

fn latex_label(l: &BasisLabel) -> String {
    match l {
        BasisLabel::Word(w) | BasisLabel::Multiset(w) if w.is_empty() => "\\varnothing".into(),
        l => l.to_string(),
    }
}

fn block_array(source: &[String], target: &[String], cell: impl Fn(usize, usize) -> String) -> String {
    if source.is_empty() || target.is_empty() {
        return "\\begin{array}{}\n\\end{array}\n".into();
    }
    let cols = "c".repeat(source.len());
    let mut out = format!("\\begin{{blockarray}}{{c{cols}}}\n");
    out.push_str(&format!("& {} \\\\\n", source.join(" & ")));
    out.push_str(&format!("\\begin{{block}}{{c({cols})}}\n"));
    for (r, label) in target.iter().enumerate() {
        let row: Vec<String> = (0..source.len()).map(|c| cell(r, c)).collect();
        out.push_str(&format!("{label} & {} \\\\\n", row.join(" & ")));
    }
    out.push_str("\\end{block}\n\\end{blockarray}\n");
    out
}

/// A symbolic matrix as a labeled block array; `b_ij` exponents stay
/// symbolic unless the matrix was evaluated first.
pub fn latex_symbolic(mat: &SymbolicMatrix) -> String {
    let source: Vec<String> = mat.source.iter().map(latex_label).collect();
    let target: Vec<String> = mat.target.iter().map(latex_label).collect();
    block_array(&source, &target, |r, c| {
        mat.entry(r, c).map_or_else(|| "0".into(), |e| e.to_latex())
    })
}

fn latex_element(e: &RingElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (n, c)) in e.terms().iter().rev().enumerate() {
        let neg = rational_is_negative(c);
        let abs = if neg { -c } else { c.clone() };
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let coeff = format_rational(&abs);
        match (*n, coeff.as_str()) {
            (0, _) => out.push_str(&coeff),
            (n, "1") => out.push_str(&format!("t^{{{n}}}")),
            (n, _) => out.push_str(&format!("{coeff}t^{{{n}}}")),
        }
    }
    out
}

/// A concrete matrix in the `t^n` basis of `k[S]`.
pub fn latex_concrete(mat: &DifferentialMatrix) -> String {
    let source: Vec<String> = mat.source().iter().map(|e| latex_label(&e.label)).collect();
    let target: Vec<String> = mat.target().iter().map(|e| latex_label(&e.label)).collect();
    block_array(&source, &target, |r, c| latex_element(&mat.entry(r, c)))
}

/// Serializes `value` and adds the schema tag to the top-level object.
pub fn to_document<T: Serialize>(value: &T) -> Result<Value> {
    let v = serde_json::to_value(value).map_err(|e| Error::Document(e.to_string()))?;
    match v {
        Value::Object(mut map) => {
            map.insert("schema".into(), Value::String(SCHEMA.into()));
            Ok(Value::Object(map))
        }
        _ => Err(Error::Document("only objects can be emitted as documents".into())),
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(to_document(value)?.to_string())
}

/// Parses a document written by [`to_document`], checking the schema tag.
pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let Value::Object(mut map) = v else {
        return Err(Error::Document("expected an object".into()));
    };
    match map.remove("schema") {
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(other) => return Err(Error::Document(format!("unsupported schema {other}"))),
        None => return Err(Error::Document("missing schema tag".into())),
    }
    serde_json::from_value(Value::Object(map)).map_err(|e| Error::Document(e.to_string()))
}

pub fn dot_poset(p: &KunzPoset) -> String {
    p.to_dot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apery_resolution;
    use crate::complex::BettiTable;
    use crate::m4_special::{nonci_symbolic, ray_symbolic};
    use crate::semigroup::NumericalSemigroup;

    #[test]
    fn latex_tokens() {
        let mats = nonci_symbolic(2).unwrap();
        let tex = latex_symbolic(&mats[1]);
        assert!(tex.starts_with("\\begin{blockarray}"));
        for tok in ["x_1^2", "-y^{b_{12}}", "x_1y^{b_{33}}"] {
            assert!(tex.contains(tok), "{tok} missing from\n{tex}");
        }
        let tex = latex_symbolic(&ray_symbolic(2));
        assert!(tex.contains("x_1^3"), "{tex}");
        let empty = SymbolicMatrix {
            m: 4,
            source: vec![],
            target: vec![],
            columns: vec![],
        };
        assert_eq!(latex_symbolic(&empty), "\\begin{array}{}\n\\end{array}\n");
    }

    #[test]
    fn concrete_latex() {
        let s = NumericalSemigroup::from_generators(&[4, 5, 7]).unwrap();
        let d = apery_resolution::differential(&s, 1).unwrap();
        let tex = latex_concrete(&d);
        assert!(tex.contains("t^{10}"), "{tex}");
    }

    #[test]
    fn json_round_trip() {
        let s = NumericalSemigroup::from_generators(&[4, 5, 7]).unwrap();
        let d = apery_resolution::differential(&s, 2).unwrap();
        let text = to_json_string(&d).unwrap();
        assert!(text.contains("\"schema\":\"nsres/1\""));
        let back: DifferentialMatrix = from_json_str(&text).unwrap();
        assert_eq!(back, d);
        let sym = apery_resolution::symbolic_differential(4, 2).unwrap();
        let back: SymbolicMatrix = from_json_str(&to_json_string(&sym).unwrap()).unwrap();
        assert_eq!(back, sym);
        let t = BettiTable {
            values: vec![1, 3, 6],
            homological_bound: 2,
            degree_bound: None,
        };
        let back: BettiTable = from_json_str(&to_json_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
        assert!(from_json_str::<BettiTable>("{\"values\":[1]}").is_err());
    }
}
