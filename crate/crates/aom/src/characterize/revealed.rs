//! Revealed preference from attention compensation.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::characterize::constraints::ac_satisfied;
use crate::core::alphabet::Menu;
use crate::core::choice::ChoiceRule;
use crate::core::domain::Domain;
use crate::core::mask::Mask;
use crate::core::preference::{all_preferences, Preference};
use crate::error::Result;

/// The intersection of all AC-compatible orders: pairs `(better, worse)`
/// ranked identically by every surviving preference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevealedRelation {
    pub pairs: BTreeSet<(usize, usize)>,
    pub surviving_prefs: usize,
}

/// Outcome of exhaustive AC screening. `NotAom` marks data no preference can
/// rationalize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PacResult {
    Relation(RevealedRelation),
    NotAom,
}

impl PacResult {
    pub fn relation(&self) -> Option<&RevealedRelation> {
        match self {
            PacResult::Relation(r) => Some(r),
            PacResult::NotAom => None,
        }
    }
}

fn ac_survivors(pi: &ChoiceRule, domain: &Domain, n: usize) -> Result<Vec<Preference>> {
    let prefs: Vec<Preference> = all_preferences(n)?.collect();
    let flags: Vec<Result<bool>> = prefs
        .par_iter()
        .map(|p| ac_satisfied(pi, p, domain).map(|(ok, _)| ok))
        .collect();
    let mut survivors = Vec::new();
    for (p, f) in prefs.into_iter().zip(flags) {
        if f? {
            survivors.push(p);
        }
    }
    Ok(survivors)
}

/// Enumerate every strict order, keep the AC-compatible ones, and intersect
/// them into the revealed-preference relation.
pub fn revealed_preference_pac(pi: &ChoiceRule, domain: &Domain, n: usize) -> Result<PacResult> {
    let survivors = ac_survivors(pi, domain, n)?;
    if survivors.is_empty() {
        return Ok(PacResult::NotAom);
    }
    let mut pairs = BTreeSet::new();
    for better in 0..n {
        for worse in 0..n {
            if better != worse && survivors.iter().all(|p| p.prefers(better, worse)) {
                pairs.insert((better, worse));
            }
        }
    }
    Ok(PacResult::Relation(RevealedRelation {
        pairs,
        surviving_prefs: survivors.len(),
    }))
}

/// The first AC-compatible preference in enumeration order, if any. The data
/// is an attention-overload model exactly when a witness exists.
pub fn is_aom(pi: &ChoiceRule, domain: &Domain, n: usize) -> Result<Option<Preference>> {
    for pref in all_preferences(n)? {
        let (ok, _) = ac_satisfied(pi, &pref, domain)?;
        if ok {
            return Ok(Some(pref));
        }
    }
    Ok(None)
}

/// Direct preference revelations from regularity violations against binary
/// menus: `(b, a)` whenever π(a|S) > π(a|{a,b}) for some S ⊇ {a,b} in the
/// domain with the binary menu observed.
pub fn binary_regularity_revelations(
    pi: &ChoiceRule,
    domain: &Domain,
) -> Result<BTreeSet<(usize, usize)>> {
    let mut pairs = BTreeSet::new();
    for &pair_menu in domain.menus() {
        if pair_menu.len() != 2 {
            continue;
        }
        let alts: Vec<usize> = pair_menu.iter().collect();
        for &sup in domain.menus() {
            if !pair_menu.is_proper_subset_of(sup) {
                continue;
            }
            for (&a, &b) in [(&alts[0], &alts[1]), (&alts[1], &alts[0])] {
                if pi.prob(a, sup)? > pi.prob(a, pair_menu)? {
                    pairs.insert((b, a));
                }
            }
        }
    }
    Ok(pairs)
}

/// A regularity violation at a bigger choice problem pins down only a
/// disjunction: some element of `candidates` beats `alt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjunction {
    pub alt: usize,
    pub sub: Menu,
    pub candidates: Mask,
}

/// All `(a, T ⊂ S)` with π(a|S) > π(a|T); each records the candidate set
/// `T \ {a}` of possibly-better alternatives.
pub fn regularity_disjunctions(pi: &ChoiceRule, domain: &Domain) -> Result<Vec<Disjunction>> {
    let mut out = Vec::new();
    for (sub, sup) in crate::core::domain::enumerate_nested_pairs(domain) {
        for alt in sub.iter() {
            if pi.prob(alt, sup)? > pi.prob(alt, sub)? {
                out.push(Disjunction {
                    alt,
                    sub,
                    candidates: sub.mask().minus(Mask::singleton(alt)),
                });
            }
        }
    }
    Ok(out)
}
