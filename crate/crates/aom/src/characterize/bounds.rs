//! Sharp population bounds on attention frequencies.

use crate::core::alphabet::Menu;
use crate::core::choice::ChoiceRule;
use crate::core::domain::Domain;
use crate::core::preference::Preference;
use crate::error::{Error, Result};

/// Sharp bounds for φ(a|S): the best choice probability over supersets from
/// below, the cheapest weak-upper-contour probability over subsets from
/// above.
#[derive(Clone, Debug)]
pub struct AttentionBounds {
    pub lower: f64,
    pub upper: f64,
    /// Superset attaining the lower bound.
    pub lower_argmax: Menu,
    /// Subset attaining the upper bound.
    pub upper_argmin: Menu,
}

/// Deterministic attention classification readable off the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttentionClass {
    /// Both bounds are one.
    RevealedFullAttention,
    /// Both bounds are zero.
    RevealedInattention,
    /// Lower zero, upper one: the data says nothing.
    NoRevealedAttention,
    /// Anything tighter.
    PartialRevealedAttention,
}

impl AttentionBounds {
    pub fn classify(&self) -> AttentionClass {
        let lo1 = (self.lower - 1.0).abs() <= 1e-12;
        let lo0 = self.lower.abs() <= 1e-12;
        let up1 = (self.upper - 1.0).abs() <= 1e-12;
        let up0 = self.upper.abs() <= 1e-12;
        match (lo0, lo1, up0, up1) {
            (_, true, _, true) => AttentionClass::RevealedFullAttention,
            (true, _, true, _) => AttentionClass::RevealedInattention,
            (true, _, _, true) => AttentionClass::NoRevealedAttention,
            _ => AttentionClass::PartialRevealedAttention,
        }
    }
}

/// Population bounds for φ(alt|menu) given a candidate preference. An eta
/// threshold tightens the lower bound to at least 1-eta on binary menus.
pub fn attention_bounds_population(
    pi: &ChoiceRule,
    pref: &Preference,
    alt: usize,
    menu: Menu,
    domain: &Domain,
    eta: Option<f64>,
) -> Result<AttentionBounds> {
    if !menu.contains(alt) {
        return Err(Error::AlternativeNotInMenu {
            alt,
            menu: menu.mask().0,
        });
    }
    let supersets = domain.supersets_of(menu);
    if supersets.is_empty() {
        return Err(Error::NoSupersetInDomain(menu.mask().0));
    }
    let subsets = domain.subsets_with(menu, alt);
    if subsets.is_empty() {
        return Err(Error::NoSubsetInDomain(menu.mask().0));
    }

    let mut lower = f64::NEG_INFINITY;
    let mut lower_argmax = supersets[0];
    for r in supersets {
        let p = pi.prob(alt, r)?;
        if p > lower {
            lower = p;
            lower_argmax = r;
        }
    }
    if let Some(eta) = eta {
        if menu.len() == 2 {
            lower = lower.max(1.0 - eta);
        }
    }

    let mut upper = f64::INFINITY;
    let mut upper_argmin = subsets[0];
    for t in subsets {
        let contour = pref.upper_contour_mask(alt, false).intersect(t.mask());
        let p = pi.event_prob(contour, t)?;
        if p < upper {
            upper = p;
            upper_argmin = t;
        }
    }

    Ok(AttentionBounds {
        lower,
        upper,
        lower_argmax,
        upper_argmin,
    })
}
