//! Preference revelation from frequent binary choices.
//!
//! When singleton attention in binary menus is capped at η, choosing an
//! alternative more often than η cannot be explained by attention alone and
//! reveals preference.

use std::collections::BTreeSet;

use crate::characterize::constraints::ac_satisfied;
use crate::core::choice::ChoiceRule;
use crate::core::domain::Domain;
use crate::core::preference::Preference;
use crate::error::{Error, Result};

/// Pairs revealed by binary menus at threshold eta, plus a cycle flag: a
/// cyclic revelation falsifies the joint model at that eta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaRevelation {
    pub pairs: BTreeSet<(usize, usize)>,
    pub cyclic: bool,
}

fn has_cycle(pairs: &BTreeSet<(usize, usize)>) -> bool {
    // Iterative DFS over the revealed digraph.
    let nodes: BTreeSet<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut color: std::collections::BTreeMap<usize, u8> =
        nodes.iter().map(|&n| (n, 0)).collect();
    for &start in &nodes {
        if color[&start] != 0 {
            continue;
        }
        let mut stack = vec![(start, false)];
        while let Some((node, processed)) = stack.pop() {
            if processed {
                color.insert(node, 2);
                continue;
            }
            if color[&node] == 1 {
                continue;
            }
            color.insert(node, 1);
            stack.push((node, true));
            for &(a, b) in pairs {
                if a == node {
                    match color[&b] {
                        0 => stack.push((b, false)),
                        1 => return true,
                        _ => {}
                    }
                }
            }
        }
    }
    false
}

/// Scan binary menus: π(a|{a,b}) > eta reveals a over b (strict inequality;
/// equality reveals nothing).
pub fn eta_revealed_preference(
    pi: &ChoiceRule,
    eta: f64,
    domain: &Domain,
) -> Result<EtaRevelation> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::EtaOutOfRange(eta));
    }
    let mut pairs = BTreeSet::new();
    for &menu in domain.menus() {
        if menu.len() != 2 {
            continue;
        }
        let alts: Vec<usize> = menu.iter().collect();
        for (a, b) in [(alts[0], alts[1]), (alts[1], alts[0])] {
            if pi.prob(a, menu)? > eta {
                pairs.insert((a, b));
            }
        }
    }
    let cyclic = has_cycle(&pairs);
    Ok(EtaRevelation { pairs, cyclic })
}

/// Joint characterization: the pair rationalizes the data with a rule that is
/// both overload-consistent and eta-attentive at binaries iff attention
/// compensation holds and every eta-revealed pair agrees with the preference.
pub fn joint_characterization_check(
    pi: &ChoiceRule,
    pref: &Preference,
    eta: f64,
    domain: &Domain,
) -> Result<bool> {
    let (ac_ok, _) = ac_satisfied(pi, pref, domain)?;
    if !ac_ok {
        return Ok(false);
    }
    let revealed = eta_revealed_preference(pi, eta, domain)?;
    if revealed.cyclic {
        return Ok(false);
    }
    Ok(revealed
        .pairs
        .iter()
        .all(|&(better, worse)| pref.prefers(better, worse)))
}
