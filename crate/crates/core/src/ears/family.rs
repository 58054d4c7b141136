use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::{canonical_type, CartanType};
use crate::error::{Error, Result};

/// Squared length relative to the shortest root: 1 short, 2 long in types
/// B, C, F, 3 long in G2, 4 for twice a short root in BC.
pub type LengthClass = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tag")]
pub enum FamilyTag {
    X11,
    X1t,
    Xtt,
    Xt1,
    A1Star,
    BStar,
    CStar,
    Bc21,
    Bc22One,
    Bc22Two,
    Bc24,
    /// Long roots need `k_0..k_m` even.
    HtB { m: usize },
    /// Long B roots need `k_1..k_{m+1}` even; C-long roots additionally `k_0` odd.
    HtBc { m: usize },
}

/// A family of extended affine root systems in `nvars` null directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EarsFamily {
    #[serde(flatten)]
    pub tag: FamilyTag,
    /// The finite type; `B` for the BC families.
    pub kind: CartanType,
    pub rank: usize,
    pub nvars: usize,
}

impl EarsFamily {
    pub fn new(tag: FamilyTag, kind: CartanType, rank: usize, nvars: usize) -> Result<Self> {
        let f = EarsFamily { tag, kind, rank, nvars };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        use CartanType::*;
        use FamilyTag::*;
        let bad = || Error::InvalidArgument(format!("{self} is not a valid family"));
        let twisted_kind = matches!(self.kind, B | C | F | G);
        let ok = match self.tag {
            X11 => self.kind.is_valid_rank(self.rank) || (self.kind == B && self.rank == 1),
            X1t | Xtt | Xt1 => twisted_kind && (self.kind.is_valid_rank(self.rank) || (self.kind == B && self.rank == 1)),
            A1Star => self.kind == A && self.rank == 1,
            BStar => self.kind == B && self.rank >= 2,
            CStar => self.kind == C && self.rank >= 2,
            Bc21 | Bc22One | Bc22Two | Bc24 => self.kind == B && self.rank >= 1,
            HtB { m } => self.kind == B && self.rank >= 1 && m < self.nvars,
            HtBc { m } => self.kind == B && self.rank >= 1 && m + 1 < self.nvars,
        };
        let n_ok = match self.tag {
            HtB { .. } | HtBc { .. } => self.nvars >= 2,
            _ => self.nvars == 2,
        };
        if ok && n_ok {
            Ok(())
        } else {
            Err(bad())
        }
    }

    /// `t` of the family: 3 for G2, otherwise 2; 1 for untwisted types.
    pub fn t(&self) -> u32 {
        match self.kind {
            CartanType::G => 3,
            CartanType::B | CartanType::C | CartanType::F => 2,
            _ => 1,
        }
    }

    fn long_class(&self) -> Option<LengthClass> {
        let (k, r) = canonical_type(self.kind, self.rank);
        match k {
            CartanType::G => Some(3),
            CartanType::B | CartanType::C | CartanType::F if r >= 2 => Some(2),
            _ => None,
        }
    }

    pub fn is_bc(&self) -> bool {
        matches!(self.tag, FamilyTag::Bc21 | FamilyTag::Bc22One | FamilyTag::Bc22Two | FamilyTag::Bc24 | FamilyTag::HtBc { .. })
    }

    /// Length classes the family can contain.
    pub fn classes(&self) -> Vec<LengthClass> {
        let mut c = vec![1];
        if let Some(l) = self.long_class() {
            c.push(l);
        }
        if self.is_bc() {
            c.push(4);
        }
        c
    }

    /// Whether `alpha + sum_i k_i delta_i` belongs to the family, for `alpha`
    /// of the given length class.
    pub fn member(&self, class: LengthClass, k: &[i64]) -> bool {
        use FamilyTag::*;
        if k.len() != self.nvars || !self.classes().contains(&class) {
            return false;
        }
        let t = self.t() as i64;
        let div = |x: i64, d: i64| x.rem_euclid(d) == 0;
        let even = |x: i64| div(x, 2);
        let long = Some(class) == self.long_class();
        match self.tag {
            X11 => true,
            X1t => !long || div(k[1], t),
            Xtt => !long || (div(k[0], t) && div(k[1], t)),
            Xt1 => !long || div(k[0], t),
            A1Star => even(k[0] * k[1]),
            BStar => {
                if long {
                    even(k[0]) && even(k[1])
                } else {
                    even(k[0] * k[1])
                }
            }
            CStar => !long || even(k[0] * k[1]),
            Bc21 => class != 4 || !even(k[0]),
            Bc22One => class != 4 || (!even(k[0]) && even(k[1])),
            Bc22Two => match class {
                1 => true,
                2 => even(k[1]),
                _ => !even(k[0]) && even(k[1]),
            },
            Bc24 => match class {
                1 => true,
                2 => even(k[1]),
                _ => !even(k[0]) && div(k[1], 4),
            },
            HtB { m } => !long || k[..=m].iter().all(|x| even(*x)),
            HtBc { m } => match class {
                1 => true,
                2 => k[1..=m + 1].iter().all(|x| even(*x)),
                _ => !even(k[0]) && k[1..=m + 1].iter().all(|x| even(*x)),
            },
        }
    }

    /// Superscript of the family name, one entry per null direction.
    pub fn tiers(&self) -> Vec<u32> {
        use FamilyTag::*;
        let t = self.t();
        match self.tag {
            X11 | A1Star | CStar => vec![1, 1],
            X1t => vec![1, t],
            Xtt => vec![t, t],
            Xt1 => vec![t, 1],
            BStar => vec![2, 2],
            Bc21 => vec![2, 1],
            Bc22One | Bc22Two => vec![2, 2],
            Bc24 => vec![2, 4],
            HtB { m } => (0..self.nvars).map(|j| if j <= m { t } else { 1 }).collect(),
            HtBc { m } => (0..self.nvars).map(|j| if j <= m + 1 { 2 } else { 1 }).collect(),
        }
    }

    /// The family with the two null directions exchanged, where that is again
    /// a listed family.
    pub fn swapped(&self) -> Option<EarsFamily> {
        use FamilyTag::*;
        let tag = match self.tag {
            X1t => Xt1,
            Xt1 => X1t,
            X11 | Xtt | A1Star | BStar | CStar => self.tag,
            _ => return None,
        };
        Some(EarsFamily { tag, ..*self })
    }
}

impl fmt::Display for EarsFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilyTag::*;
        let x = format!("{}{}", self.kind, self.rank);
        let bc = format!("BC{}", self.rank);
        let tiers = |v: Vec<u32>| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self.tag {
            A1Star => write!(f, "A1^(1,1)*"),
            BStar => write!(f, "{x}^(2,2)*"),
            CStar => write!(f, "{x}^(1,1)*"),
            Bc22One => write!(f, "{bc}^(2,2)(1)"),
            Bc22Two => write!(f, "{bc}^(2,2)(2)"),
            Bc21 | Bc24 => write!(f, "{bc}^({})", tiers(self.tiers())),
            HtB { m } => write!(f, "{x}^({}) [m={m}]", tiers(self.tiers())),
            HtBc { m } => write!(f, "{bc}^({})(2) [m={m}]", tiers(self.tiers())),
            _ => write!(f, "{x}^({})", tiers(self.tiers())),
        }
    }
}
