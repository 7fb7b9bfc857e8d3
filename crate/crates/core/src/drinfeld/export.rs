use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::make_field;
use crate::poly::Poly;

use super::phi::ModularPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Cas,
}

#[derive(Serialize, Deserialize)]
struct JsonPhi {
    q: u64,
    p: u64,
    e: u32,
    modulus: Vec<u32>,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    m: u32,
    n: u32,
    #[serde(rename = "T")]
    t: Vec<Vec<u32>>,
}

/// Terms in output order: `m` descending, then `n` descending.
fn ordered(phi: &ModularPoly) -> impl Iterator<Item = (&(u32, u32), &Poly)> {
    phi.terms().iter().rev()
}

fn monomial(m: u32, n: u32) -> String {
    let mut parts = Vec::new();
    for (var, d) in [("X", m), ("Y", n)] {
        match d {
            0 => {}
            1 => parts.push(var.to_string()),
            _ => parts.push(format!("{var}^{d}")),
        }
    }
    parts.join("*")
}

fn render_sum(phi: &ModularPoly) -> String {
    let terms: Vec<String> = ordered(phi)
        .map(|(&(m, n), c)| {
            let mono = monomial(m, n);
            match (c.is_one(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => format!("({})", c.format_with("T")),
                (false, false) => format!("({})*{mono}", c.format_with("T")),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn modulus_string(phi: &ModularPoly) -> String {
    let f = phi.field();
    let prime = make_field(f.characteristic() as u64, 1).expect("prime subfield");
    Poly::new(&prime, f.modulus().to_vec()).format_with("a")
}

pub fn to_text(phi: &ModularPoly) -> String {
    format!("{}\n", render_sum(phi))
}

pub fn to_json(phi: &ModularPoly) -> String {
    let f = phi.field();
    let doc = JsonPhi {
        q: phi.q() as u64,
        p: f.characteristic() as u64,
        e: f.degree(),
        modulus: f.modulus().to_vec(),
        terms: ordered(phi)
            .map(|(&(m, n), c)| JsonTerm {
                m,
                n,
                t: c.coeffs().iter().map(|&v| f.digits(v)).collect(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serialises")
}

/// A single assignment `Phi := ...;` preceded by a comment naming the field.
pub fn to_cas(phi: &ModularPoly) -> String {
    let f = phi.field();
    let header = if f.degree() == 1 {
        format!("/* coefficients in GF({}) */", f.characteristic())
    } else {
        format!(
            "/* coefficients in GF({}^{}) = GF({})[a]/({}) */",
            f.characteristic(),
            f.degree(),
            f.characteristic(),
            modulus_string(phi)
        )
    };
    format!("{header}\nPhi := {};\n", render_sum(phi))
}

pub fn export_phi(phi: &ModularPoly, format: Format) -> String {
    match format {
        Format::Text => to_text(phi),
        Format::Json => to_json(phi),
        Format::Cas => to_cas(phi),
    }
}

/// Parse the JSON form back; the modulus has to match the canonical one for
/// `(p, e)`.
pub fn from_json(s: &str) -> Result<ModularPoly> {
    let doc: JsonPhi = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    let f = make_field(doc.p, doc.e)?;
    if f.order() as u64 != doc.q {
        return Err(Error::Malformed(format!(
            "q = {} does not equal {}^{}",
            doc.q, doc.p, doc.e
        )));
    }
    if f.modulus() != doc.modulus.as_slice() {
        return Err(Error::Malformed(format!(
            "modulus {:?} is not the canonical {:?}",
            doc.modulus,
            f.modulus()
        )));
    }
    let mut terms = BTreeMap::new();
    for t in doc.terms {
        let coeffs =
            t.t.iter()
                .map(|d| f.from_digits(d))
                .collect::<Result<Vec<u32>>>()?;
        let c = Poly::new(&f, coeffs);
        if c.is_zero() {
            return Err(Error::Malformed(format!("zero term at ({}, {})", t.m, t.n)));
        }
        if terms.insert((t.m, t.n), c).is_some() {
            return Err(Error::Malformed(format!(
                "duplicate term ({}, {})",
                t.m, t.n
            )));
        }
    }
    ModularPoly::from_terms(&f, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::expand_phi;

    #[test]
    fn text_for_q2() {
        let phi = expand_phi(2).unwrap();
        let text = to_text(&phi);
        assert!(text.starts_with("X^3 + "), "{text}");
        assert!(text.contains("(T^4 + T^3 + T^2 + T)"), "{text}");
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_round_trip() {
        for q in [2u64, 4, 9] {
            let phi = expand_phi(q).unwrap();
            let s = to_json(&phi);
            assert_eq!(from_json(&s).unwrap(), phi);
        }
        let s = to_json(&expand_phi(2).unwrap());
        assert!(
            s.starts_with(r#"{"q":2,"p":2,"e":1,"modulus":[0,1],"terms":[{"m":3,"n":0,"T":[[1]]}"#)
        );
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(from_json("{").is_err());
        let good = to_json(&expand_phi(4).unwrap());
        let bad = good.replacen(r#""modulus":[1,1,1]"#, r#""modulus":[1,0,1]"#, 1);
        assert!(matches!(from_json(&bad), Err(Error::Malformed(_))));
    }

    #[test]
    fn cas_header_and_statement() {
        let s = to_cas(&expand_phi(4).unwrap());
        assert!(
            s.starts_with("/* coefficients in GF(2^2) = GF(2)[a]/(a^2 + a + 1) */\nPhi := X^5 + ")
        );
        assert!(s.ends_with(";\n"));
    }
}
