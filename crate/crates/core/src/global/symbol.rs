use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::bass::R2Class;
use crate::error::{invalid, Error, Result};
use crate::exactnum::{det_class_of, int, is_prime, DetClass, Rational};
use crate::herm::IdealVal;
use crate::localclass::{local_exists, LocalClassLabel, LocalKind};

/// Ring of definition of a global lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// The maximal order `O_K`.
    OK,
    /// The order `Z[√-p]`, which is proper only for `p ≡ 3 (mod 4)`.
    R,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::OK => "OK",
            Ring::R => "R",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ok" | "o_k" | "o" => Ok(Ring::OK),
            "r" | "z[sqrt-p]" => Ok(Ring::R),
            _ => Err(invalid(format!("unknown ring {s:?}; expected ok or r"))),
        }
    }
}

/// Local data at 2: an `O_{K₂}`-class label, or the class of a unimodular
/// `Z₂ + 2O`-lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum At2 {
    Local(LocalClassLabel),
    R2(R2Class),
}

impl fmt::Display for At2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            At2::Local(l) => write!(f, "{}", l.kind),
            At2::R2(c) => write!(f, "{c}"),
        }
    }
}

/// A genus of `√-p`-modular hermitian lattices: local classes at `p` and at
/// 2 together with the determinant class. At every other prime the lattice
/// is self-dual, and there is a single such class.
///
/// For `p = 2` the two places coincide and `at_p` repeats the label at 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenusSymbol {
    pub p: u64,
    pub n: usize,
    pub ring: Ring,
    pub det: DetClass,
    pub at_p: LocalClassLabel,
    pub at_2: At2,
    pub norm: IdealVal,
}

impl fmt::Display for GenusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} n={} ring={} det={} at_p={} at_2={} norm={}",
            self.p, self.n, self.ring, self.det, self.at_p.kind, self.at_2, self.norm
        )
    }
}

fn check_args(p: u64, n: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(invalid("rank must be positive"));
    }
    Ok(())
}

/// The class `[2]` (or `[1]` when 2 is a norm from `K`).
pub fn det_two(p: u64) -> DetClass {
    det_class_of(&int(2), p).expect("p is prime")
}

/// Norm ideal `p·O_K` or `2p·O_K`.
fn norm_ideal(p: u64, subnormal: bool) -> IdealVal {
    let q = if subnormal { 2 * p } else { p };
    IdealVal::from_rational(p, &Rational::from_integer(BigInt::from(q)))
}

/// Whether a `√-p`-modular lattice of rank `n` over `ring` with determinant
/// class `det` exists.
pub fn exists_modular(p: u64, n: usize, ring: Ring, det: &DetClass) -> Result<bool> {
    check_args(p, n)?;
    if det.p != p {
        return Err(invalid(format!("determinant class belongs to p = {}, not {p}", det.p)));
    }
    match ring {
        Ring::OK => Ok(n % 2 == 0 && det.is_trivial() && (p % 4 != 3 || n % 4 == 0)),
        Ring::R => {
            if p % 4 != 3 {
                return Err(invalid(format!("Z[√-{p}] is the maximal order; use the ring OK")));
            }
            let one = det.is_trivial();
            let two = *det == det_two(p);
            Ok(match (p % 8, n % 4) {
                (7, 0) => one,
                (3, 0) => one,
                (3, 2) => two,
                _ => false,
            })
        }
    }
}

/// Determinant class forced on a nonempty `(p, n)` cell, if any.
pub fn forced_det(p: u64, n: usize) -> Option<DetClass> {
    if n == 0 || n % 2 == 1 {
        return None;
    }
    match (p % 8, n % 4) {
        (7, 2) => None,
        (3, 2) => Some(det_two(p)),
        _ => Some(DetClass::identity(p)),
    }
}

fn ok_symbols(p: u64, n: usize) -> Vec<GenusSymbol> {
    let det = DetClass::identity(p);
    if !exists_modular(p, n, Ring::OK, &det).unwrap_or(false) {
        return Vec::new();
    }
    let d = det.representative();
    let d = Rational::from_integer(d);
    let at_p_all = local_exists(p, p, n, &d);
    let at_2_all = local_exists(p, 2, n, &d);
    let mut out = Vec::new();
    if p == 2 {
        for l in at_2_all {
            let subnormal = l.kind == LocalKind::RpNormH;
            out.push(GenusSymbol { p, n, ring: Ring::OK, det: det.clone(), at_p: l, at_2: At2::Local(l), norm: norm_ideal(p, subnormal) });
        }
        return out;
    }
    for lp in &at_p_all {
        for l2 in &at_2_all {
            let subnormal = l2.kind == LocalKind::RuSubnormal;
            out.push(GenusSymbol {
                p,
                n,
                ring: Ring::OK,
                det: det.clone(),
                at_p: *lp,
                at_2: At2::Local(*l2),
                norm: norm_ideal(p, subnormal),
            });
        }
    }
    out
}

fn r_symbols(p: u64, n: usize) -> Vec<GenusSymbol> {
    if p % 4 != 3 || n % 2 == 1 {
        return Vec::new();
    }
    let Some(det) = forced_det(p, n) else { return Vec::new() };
    if !exists_modular(p, n, Ring::R, &det).unwrap_or(false) {
        return Vec::new();
    }
    let d = Rational::from_integer(det.representative());
    let Some(at_p) = local_exists(p, p, n, &d).into_iter().next() else { return Vec::new() };
    let s_parity = if det.is_trivial() && p % 8 == 7 { None } else { Some(usize::from(!det.is_trivial())) };
    R2Class::all_of_rank(n)
        .into_iter()
        .filter(|c| s_parity.is_none_or(|par| c.s % 2 == par))
        .map(|c| GenusSymbol { p, n, ring: Ring::R, det: det.clone(), at_p, at_2: At2::R2(c), norm: norm_ideal(p, !c.odd_diag) })
        .collect()
}

/// All genera of `√-p`-modular lattices of rank `n` over `ring`.
///
/// Over `R` the list is ordered by the rank `s` of the `O`-part, and lattices
/// without odd norms come first. For `p ≢ 3 (mod 4)` the `R`-list is empty
/// since then `Z[√-p] = O_K`.
pub fn genus_enumerate(p: u64, n: usize, ring: Ring) -> Vec<GenusSymbol> {
    if check_args(p, n).is_err() {
        return Vec::new();
    }
    match ring {
        Ring::OK => ok_symbols(p, n),
        Ring::R => r_symbols(p, n),
    }
}

/// Genus counts for the superspecial dictionary: `sigma1` counts genera of
/// `O_K`-lattices, `sigma2` those of `Z[√-p]`-lattices that are not
/// `O_K`-modules (only meaningful for `p ≡ 3 mod 4`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub p: u64,
    pub n: usize,
    pub nonempty: bool,
    pub forced_det: Option<DetClass>,
    pub sigma1_count: usize,
    pub sigma2_count: Option<usize>,
    pub total: usize,
}

pub fn sigma_report(p: u64, n: usize) -> Result<SigmaReport> {
    check_args(p, n)?;
    if n % 2 == 1 {
        return Err(invalid("the rank must be even"));
    }
    let sigma1 = genus_enumerate(p, n, Ring::OK).len();
    let (sigma2, total) = if p % 4 == 3 {
        let all = genus_enumerate(p, n, Ring::R).len();
        if all < sigma1 {
            return Err(Error::Inconsistent(format!("{all} genera over Z[√-p] but {sigma1} over O_K")));
        }
        (Some(all - sigma1), all)
    } else {
        (None, sigma1)
    };
    let nonempty = total > 0;
    Ok(SigmaReport { p, n, nonempty, forced_det: if nonempty { forced_det(p, n) } else { None }, sigma1_count: sigma1, sigma2_count: sigma2, total })
}
