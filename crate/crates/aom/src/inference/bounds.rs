//! Estimated attention-frequency bounds with simulation-based adjustment.
//!
//! The plug-in max (min) over supersets (subsets) overshoots; each term is
//! shifted by a critical value times its standard error before taking the
//! extremum. The critical value is the (1-alpha) quantile of the max of the
//! Studentized estimates' Gaussian limit: independent standard normals when
//! all menus differ, a correlated vector otherwise. Joint targets share one
//! critical value computed from the pooled correlation matrix.

use crate::core::alphabet::Menu;
use crate::core::choice::ChoiceRule;
use crate::core::mask::Mask;
use crate::core::preference::Preference;
use crate::error::{Error, Result};
use crate::inference::correlation::{CorrelationMatrix, EventTerm};
use crate::inference::critical::critical_value_unfloored;
use crate::inference::estimate::estimate_choice_rule;
use crate::models::Dataset;

/// Which bound a target asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

/// One attention-frequency bound request. Upper bounds need a preference to
/// form weak upper contour sets.
#[derive(Clone, Debug)]
pub struct BoundTarget {
    pub alt: usize,
    pub menu: Menu,
    pub side: BoundSide,
    pub pref: Option<Preference>,
}

impl BoundTarget {
    pub fn lower(alt: usize, menu: Menu) -> BoundTarget {
        BoundTarget {
            alt,
            menu,
            side: BoundSide::Lower,
            pref: None,
        }
    }

    pub fn upper(alt: usize, menu: Menu, pref: Preference) -> BoundTarget {
        BoundTarget {
            alt,
            menu,
            side: BoundSide::Upper,
            pref: Some(pref),
        }
    }
}

/// One menu's contribution to a bound.
#[derive(Clone, Debug)]
pub struct BoundTerm {
    pub menu: Menu,
    pub estimate: f64,
    pub sigma: f64,
    /// estimate -/+ cv * sigma; equals the raw estimate when degenerate.
    pub adjusted: f64,
}

/// An estimated one-sided bound on an attention frequency.
#[derive(Clone, Debug)]
pub struct BoundEstimate {
    pub alt: usize,
    pub menu: Menu,
    pub side: BoundSide,
    pub alpha: f64,
    pub value: f64,
    pub cv: f64,
    /// Menu attaining the extremum.
    pub arg_menu: Menu,
    pub terms: Vec<BoundTerm>,
}

struct Coordinate {
    target: usize,
    menu: Menu,
    event: Mask,
    sign: f64,
    estimate: f64,
    sigma: f64,
}

fn coordinates_for_target(
    pi_hat: &ChoiceRule,
    idx: usize,
    target: &BoundTarget,
) -> Result<Vec<Coordinate>> {
    let domain = pi_hat.domain();
    if !target.menu.contains(target.alt) {
        return Err(Error::AlternativeNotInMenu {
            alt: target.alt,
            menu: target.menu.mask().0,
        });
    }
    let mut coords = Vec::new();
    match target.side {
        BoundSide::Lower => {
            let supersets = domain.supersets_of(target.menu);
            if supersets.is_empty() {
                return Err(Error::NoSupersetInDomain(target.menu.mask().0));
            }
            for r in supersets {
                let event = Mask::singleton(target.alt);
                let p = pi_hat.prob(target.alt, r)?;
                let n = pi_hat.sample_size(r).ok_or(Error::MenuMissing(r.mask().0))?;
                coords.push(Coordinate {
                    target: idx,
                    menu: r,
                    event,
                    sign: 1.0,
                    estimate: p,
                    sigma: (p * (1.0 - p) / n as f64).sqrt(),
                });
            }
        }
        BoundSide::Upper => {
            let pref = target.pref.as_ref().ok_or(Error::EtaMissing)?;
            let subsets = domain.subsets_with(target.menu, target.alt);
            if subsets.is_empty() {
                return Err(Error::NoSubsetInDomain(target.menu.mask().0));
            }
            for t in subsets {
                let event = pref
                    .upper_contour_mask(target.alt, false)
                    .intersect(t.mask());
                let p = pi_hat.event_prob(event, t)?;
                let n = pi_hat.sample_size(t).ok_or(Error::MenuMissing(t.mask().0))?;
                coords.push(Coordinate {
                    target: idx,
                    menu: t,
                    event,
                    // Upper-bound coverage flips the tail, so the coordinate
                    // enters the Gaussian max with a negative sign.
                    sign: -1.0,
                    estimate: p,
                    sigma: (p * (1.0 - p) / n as f64).sqrt(),
                });
            }
        }
    }
    Ok(coords)
}

/// Estimate several attention-frequency bounds with a single shared critical
/// value calibrated for joint coverage 1-alpha.
pub fn joint_attention_bounds(
    data: &Dataset,
    targets: &[BoundTarget],
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<Vec<BoundEstimate>> {
    if targets.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let pi_hat = estimate_choice_rule(data)?;
    joint_attention_bounds_on_rule(&pi_hat, targets, alpha, draws, seed)
}

/// Same as `joint_attention_bounds` for a pre-estimated rule.
pub fn joint_attention_bounds_on_rule(
    pi_hat: &ChoiceRule,
    targets: &[BoundTarget],
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<Vec<BoundEstimate>> {
    let mut coords = Vec::new();
    for (idx, t) in targets.iter().enumerate() {
        coords.extend(coordinates_for_target(pi_hat, idx, t)?);
    }

    // Degenerate coordinates enter unadjusted and stay out of the Gaussian.
    let active: Vec<&Coordinate> = coords.iter().filter(|c| c.sigma > 0.0).collect();
    let cv = if active.is_empty() {
        0.0
    } else {
        let terms: Vec<Vec<EventTerm>> = active
            .iter()
            .map(|c| {
                vec![EventTerm {
                    coeff: c.sign,
                    event: c.event,
                    menu: c.menu,
                }]
            })
            .collect();
        let omega = CorrelationMatrix::from_event_terms(pi_hat, &terms)?;
        critical_value_unfloored(&omega, alpha, draws, seed)?
    };

    let mut out = Vec::with_capacity(targets.len());
    for (idx, target) in targets.iter().enumerate() {
        let mut terms = Vec::new();
        let mut best: Option<(f64, Menu)> = None;
        for c in coords.iter().filter(|c| c.target == idx) {
            let adjusted = match target.side {
                BoundSide::Lower => c.estimate - cv * c.sigma,
                BoundSide::Upper => c.estimate + cv * c.sigma,
            };
            let improves = match (&best, target.side) {
                (None, _) => true,
                (Some((v, _)), BoundSide::Lower) => adjusted > *v,
                (Some((v, _)), BoundSide::Upper) => adjusted < *v,
            };
            if improves {
                best = Some((adjusted, c.menu));
            }
            terms.push(BoundTerm {
                menu: c.menu,
                estimate: c.estimate,
                sigma: c.sigma,
                adjusted,
            });
        }
        let (value, arg_menu) = best.expect("target has at least one coordinate");
        out.push(BoundEstimate {
            alt: target.alt,
            menu: target.menu,
            side: target.side,
            alpha,
            value,
            cv,
            arg_menu,
            terms,
        });
    }
    Ok(out)
}

/// Lower bound for φ(alt|menu): adjusted max of π̂(alt|R) over observed
/// supersets R.
pub fn attention_bound_lower(
    data: &Dataset,
    alt: usize,
    menu: Menu,
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<BoundEstimate> {
    let mut v = joint_attention_bounds(data, &[BoundTarget::lower(alt, menu)], alpha, draws, seed)?;
    Ok(v.pop().expect("one target"))
}

/// Upper bound for φ(alt|menu): adjusted min of π̂(U_⪰(alt)|T) over observed
/// subsets T containing alt.
pub fn attention_bound_upper(
    data: &Dataset,
    pref: &Preference,
    alt: usize,
    menu: Menu,
    alpha: f64,
    draws: usize,
    seed: u64,
) -> Result<BoundEstimate> {
    let mut v = joint_attention_bounds(
        data,
        &[BoundTarget::upper(alt, menu, pref.clone())],
        alpha,
        draws,
        seed,
    )?;
    Ok(v.pop().expect("one target"))
}
