use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactnum::{format_rational, parse_rational, KElem, KMat};
use crate::herm::{HermLattice, OrderTag, RingCtx};

pub const GRAM_SCHEMA: &str = "modlat.gram/1";

/// A Gram matrix on disk. Entry `[a, b]` stands for `a + b√-p`, with `a`, `b`
/// exact rationals written as decimal strings. Without `prime` the document
/// describes a global lattice; with it, the completion at that prime.
///
/// Fields are declared in alphabetical order so that serialization is
/// key-sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramDocument {
    pub entries: Vec<Vec<[String; 2]>>,
    pub order_tags: Vec<OrderTag>,
    pub p: String,
    pub precision: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<String>,
    pub ring: String,
    pub schema: String,
}

fn parse_u64(field: &str, s: &str) -> Result<u64> {
    s.parse().map_err(|_| invalid(format!("field {field}: expected a decimal integer, got {s:?}")))
}

impl GramDocument {
    pub fn from_lattice(l: &HermLattice, precision: u32) -> GramDocument {
        let (ring, prime) = match l.ctx() {
            RingCtx::GlobalOK { .. } => ("ok", None),
            RingCtx::GlobalR { .. } => ("r", None),
            RingCtx::LocalOK { alg } => ("ok", Some(alg.l)),
            RingCtx::LocalR2 { alg } => ("r", Some(alg.l)),
        };
        let prec = l.ctx().alg().map_or(precision, |a| a.prec);
        GramDocument {
            entries: l.gram().iter().map(|row| row.iter().map(|e| [format_rational(&e.a), format_rational(&e.b)]).collect()).collect(),
            order_tags: l.tags().to_vec(),
            p: l.p().to_string(),
            precision: prec.to_string(),
            prime: prime.map(|q| q.to_string()),
            ring: ring.into(),
            schema: GRAM_SCHEMA.into(),
        }
    }

    /// Parses and validates a document: known schema, square matrix,
    /// hermitian under `(a, b) ↦ (a, −b)` transposition, one tag per row.
    pub fn parse(text: &str) -> Result<GramDocument> {
        let doc: GramDocument = serde_json::from_str(text).map_err(|e| invalid(format!("malformed Gram document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        if self.schema != GRAM_SCHEMA {
            return Err(invalid(format!("unknown schema {:?}, expected {GRAM_SCHEMA:?}", self.schema)));
        }
        let n = self.entries.len();
        if n == 0 || self.entries.iter().any(|r| r.len() != n) {
            return Err(invalid("entries must form a nonempty square matrix"));
        }
        if self.order_tags.len() != n {
            return Err(invalid("need one order tag per row"));
        }
        if !matches!(self.ring.as_str(), "ok" | "r") {
            return Err(invalid(format!("ring must be \"ok\" or \"r\", got {:?}", self.ring)));
        }
        parse_u64("p", &self.p)?;
        parse_u64("precision", &self.precision)?;
        if let Some(q) = &self.prime {
            parse_u64("prime", q)?;
        }
        let m = self.matrix()?;
        for i in 0..n {
            for j in 0..n {
                if m[i][j] != m[j][i].conj() {
                    return Err(Error::NonHermitian(format!("entry ({i},{j}) is not the conjugate of ({j},{i})")));
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> Result<u64> {
        parse_u64("p", &self.p)
    }

    pub fn precision(&self) -> Result<u32> {
        let v = parse_u64("precision", &self.precision)?;
        u32::try_from(v).map_err(|_| invalid("precision out of range"))
    }

    pub fn prime(&self) -> Result<Option<u64>> {
        self.prime.as_deref().map(|q| parse_u64("prime", q)).transpose()
    }

    pub fn matrix(&self) -> Result<KMat> {
        let p = self.p()?;
        self.entries
            .iter()
            .map(|row| row.iter().map(|[a, b]| Ok(KElem::new(p, parse_rational(a)?, parse_rational(b)?))).collect())
            .collect()
    }

    /// The ring context the document describes.
    pub fn context(&self) -> Result<RingCtx> {
        let p = self.p()?;
        match (self.ring.as_str(), self.prime()?) {
            ("ok", None) => RingCtx::global_ok(p),
            ("r", None) => RingCtx::global_r(p),
            ("ok", Some(q)) => RingCtx::local_ok(p, q, self.precision()?),
            ("r", Some(2)) => RingCtx::local_r2(p, self.precision()?),
            ("r", Some(q)) => Err(invalid(format!("the order Z + 2O is only used at 2, not at {q}"))),
            _ => Err(invalid("unknown ring")),
        }
    }

    pub fn to_lattice(&self) -> Result<HermLattice> {
        HermLattice::with_tags(self.context()?, self.matrix()?, self.order_tags.clone())
    }

    /// Canonical text: pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn round_trip() {
        let p = 7;
        let g = vec![
            vec![KElem::new(p, rat(2, 1), rat(0, 1)), KElem::new(p, rat(1, 2), rat(1, 2))],
            vec![KElem::new(p, rat(1, 2), rat(-1, 2)), KElem::new(p, rat(4, 1), rat(0, 1))],
        ];
        let l = HermLattice::new(RingCtx::global_ok(p).unwrap(), g).unwrap();
        let doc = GramDocument::from_lattice(&l, 64);
        let text = doc.to_json();
        let back = GramDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.to_lattice().unwrap().gram(), l.gram());
        assert!(text.find("\"entries\"").unwrap() < text.find("\"schema\"").unwrap());
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = r#"{"entries":[[["1","0"],["0","1"]],[["0","1"],["1","0"]]],"order_tags":["O","O"],"p":"5","precision":"64","ring":"ok","schema":"modlat.gram/1"}"#;
        assert!(matches!(GramDocument::parse(bad), Err(Error::NonHermitian(_))));
        let unknown = r#"{"entries":[[["1","0"]]],"order_tags":["O"],"p":"5","precision":"64","ring":"ok","schema":"other"}"#;
        assert!(GramDocument::parse(unknown).is_err());
    }
}
