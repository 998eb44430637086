use std::fmt;

use serde::{Deserialize, Serialize};

/// Isometry classes of self-dual and `√-p`-modular lattices at a single prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LocalKind {
    /// Self-dual at a prime unramified in `K`.
    SelfDualUnramified,
    /// `√-p`-modular at an odd `p`: a sum of `H_p(1)` planes.
    ModularP,
    /// `p = 2`, norm `2O`, leading plane of determinant `+2`.
    #[serde(rename = "RP_unique")]
    RpUnique,
    /// `p = 2`, norm `4O`: a sum of `H_2(1)` planes.
    #[serde(rename = "RP_normH")]
    RpNormH,
    /// `p = 2`, norm `2O`, leading plane of determinant `−2`.
    #[serde(rename = "RP_norm2")]
    RpNorm2,
    /// `p ≡ 1 (mod 4)` at 2: `(1)⊥(1)⊥H_2(0)^{n/2−1}`.
    #[serde(rename = "RU_normal_plus")]
    RuNormalPlus,
    /// `p ≡ 1 (mod 4)` at 2: `(1)⊥(−1)⊥H_2(0)^{n/2−1}`.
    #[serde(rename = "RU_normal_mixed")]
    RuNormalMixed,
    /// `p ≡ 1 (mod 4)` at 2: `H_2(0)^{n/2}`.
    #[serde(rename = "RU_subnormal")]
    RuSubnormal,
}

impl LocalKind {
    pub const ALL: [LocalKind; 8] = [
        LocalKind::SelfDualUnramified,
        LocalKind::ModularP,
        LocalKind::RpUnique,
        LocalKind::RpNormH,
        LocalKind::RpNorm2,
        LocalKind::RuNormalPlus,
        LocalKind::RuNormalMixed,
        LocalKind::RuSubnormal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LocalKind::SelfDualUnramified => "SelfDualUnramified",
            LocalKind::ModularP => "ModularP",
            LocalKind::RpUnique => "RP_unique",
            LocalKind::RpNormH => "RP_normH",
            LocalKind::RpNorm2 => "RP_norm2",
            LocalKind::RuNormalPlus => "RU_normal_plus",
            LocalKind::RuNormalMixed => "RU_normal_mixed",
            LocalKind::RuSubnormal => "RU_subnormal",
        }
    }

    pub fn parse(s: &str) -> Option<LocalKind> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// Whether the class only exists in even rank.
    pub fn needs_even_rank(self) -> bool {
        self != LocalKind::SelfDualUnramified
    }

    pub fn is_rp(self) -> bool {
        matches!(self, LocalKind::RpUnique | LocalKind::RpNormH | LocalKind::RpNorm2)
    }

    pub fn is_ru(self) -> bool {
        matches!(self, LocalKind::RuNormalPlus | LocalKind::RuNormalMixed | LocalKind::RuSubnormal)
    }
}

impl fmt::Display for LocalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A local class together with the rank it lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalClassLabel {
    pub kind: LocalKind,
    pub rank: usize,
}

impl LocalClassLabel {
    pub fn new(kind: LocalKind, rank: usize) -> Self {
        LocalClassLabel { kind, rank }
    }
}

impl fmt::Display for LocalClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.kind, self.rank)
    }
}
