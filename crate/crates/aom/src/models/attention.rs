//! Attention rules: constructors, attention frequency, and the overload check.

use std::collections::BTreeMap;

use crate::core::alphabet::Menu;
use crate::core::choice::{ChoiceRule, PROB_TOL};
use crate::core::domain::{enumerate_nested_pairs, Domain};
use crate::core::mask::Mask;
use crate::core::preference::Preference;
use crate::error::{Error, Result};

/// Tolerance for the attention-overload comparison.
pub const OVERLOAD_TOL: f64 = 1e-12;

/// A random attention rule: for each menu, a distribution over its nonempty
/// subsets. Stored dense per menu (2^|S| - 1 entries); exact and cheap at
/// desk scale.
#[derive(Clone, Debug)]
pub struct AttentionRule {
    dist: BTreeMap<Menu, Vec<f64>>,
}

impl AttentionRule {
    pub fn new() -> AttentionRule {
        AttentionRule {
            dist: BTreeMap::new(),
        }
    }

    /// Index of a nonempty subset in the dense per-menu vector: the subset's
    /// membership pattern compressed onto the menu's members, minus one.
    fn code(menu: Menu, subset: Mask) -> usize {
        debug_assert!(subset.is_subset_of(menu.mask()) && !subset.is_empty());
        let mut code = 0usize;
        for (pos, alt) in menu.iter().enumerate() {
            if subset.contains(alt) {
                code |= 1 << pos;
            }
        }
        code - 1
    }

    fn decode(menu: Menu, code: usize) -> Mask {
        let mut m = Mask::EMPTY;
        for (pos, alt) in menu.iter().enumerate() {
            if (code + 1) >> pos & 1 == 1 {
                m.insert(alt);
            }
        }
        m
    }

    /// Set the full distribution for a menu from `(subset, probability)`
    /// pairs; mass must sum to one over nonempty subsets.
    pub fn insert(&mut self, menu: Menu, masses: &[(Mask, f64)]) -> Result<()> {
        let mut dense = vec![0.0; (1usize << menu.len()) - 1];
        for &(subset, p) in masses {
            if subset.is_empty() || !subset.is_subset_of(menu.mask()) {
                return Err(Error::AlternativeNotInMenu {
                    alt: subset.iter().next().unwrap_or(0),
                    menu: menu.mask().0,
                });
            }
            if p < 0.0 {
                return Err(Error::NotAProbability {
                    menu: menu.mask().0,
                    sum: p,
                });
            }
            dense[Self::code(menu, subset)] += p;
        }
        let sum: f64 = dense.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::NotAProbability {
                menu: menu.mask().0,
                sum,
            });
        }
        self.dist.insert(menu, dense);
        Ok(())
    }

    pub fn domain(&self) -> Domain {
        Domain::new(self.dist.keys().copied())
    }

    pub fn has_menu(&self, menu: Menu) -> bool {
        self.dist.contains_key(&menu)
    }

    /// μ(T|S).
    pub fn mass(&self, subset: Mask, menu: Menu) -> Result<f64> {
        let dense = self
            .dist
            .get(&menu)
            .ok_or(Error::OutOfDomain(menu.mask().0))?;
        if subset.is_empty() || !subset.is_subset_of(menu.mask()) {
            return Ok(0.0);
        }
        Ok(dense[Self::code(menu, subset)])
    }

    /// Iterate `(subset, mass)` pairs for a menu, ascending subset codes.
    pub fn masses(&self, menu: Menu) -> Result<Vec<(Mask, f64)>> {
        let dense = self
            .dist
            .get(&menu)
            .ok_or(Error::OutOfDomain(menu.mask().0))?;
        Ok(dense
            .iter()
            .enumerate()
            .map(|(code, &p)| (Self::decode(menu, code), p))
            .collect())
    }
}

impl Default for AttentionRule {
    fn default() -> Self {
        AttentionRule::new()
    }
}

/// φ(a|S): the probability that `alt` enters the consideration set.
pub fn attention_frequency(mu: &AttentionRule, alt: usize, menu: Menu) -> Result<f64> {
    if !menu.contains(alt) {
        return Err(Error::AlternativeNotInMenu {
            alt,
            menu: menu.mask().0,
        });
    }
    let mut phi = 0.0;
    for (subset, p) in mu.masses(menu)? {
        if subset.contains(alt) {
            phi += p;
        }
    }
    Ok(phi)
}

/// One attention-overload violation: `phi_sup > phi_sub` for `alt ∈ sub ⊂ sup`.
#[derive(Clone, Debug)]
pub struct OverloadViolation {
    pub alt: usize,
    pub sub: Menu,
    pub sup: Menu,
    pub phi_sup: f64,
    pub phi_sub: f64,
}

/// Result of checking attention overload over a domain.
#[derive(Clone, Debug)]
pub struct OverloadReport {
    pub satisfied: bool,
    pub violations: Vec<OverloadViolation>,
}

/// Check that attention frequency is antitone across every nested pair of
/// menus in the domain. Vacuously satisfied when no pairs exist.
pub fn check_attention_overload(mu: &AttentionRule, domain: &Domain) -> Result<OverloadReport> {
    let mut violations = Vec::new();
    for (sub, sup) in enumerate_nested_pairs(domain) {
        for alt in sub.iter() {
            let phi_sup = attention_frequency(mu, alt, sup)?;
            let phi_sub = attention_frequency(mu, alt, sub)?;
            if phi_sup > phi_sub + OVERLOAD_TOL {
                violations.push(OverloadViolation {
                    alt,
                    sub,
                    sup,
                    phi_sup,
                    phi_sub,
                });
            }
        }
    }
    Ok(OverloadReport {
        satisfied: violations.is_empty(),
        violations,
    })
}

/// Logit attention: μ(T|S) ∝ |T|^ς over nonempty subsets.
pub fn logit_attention(domain: &Domain, varsigma: f64) -> AttentionRule {
    assert!(varsigma.is_finite(), "varsigma must be finite");
    let mut mu = AttentionRule::new();
    for &menu in domain.menus() {
        let masses: Vec<(Mask, f64)> = menu
            .mask()
            .nonempty_subsets()
            .map(|t| (t, (t.len() as f64).powf(varsigma)))
            .collect();
        let total: f64 = masses.iter().map(|(_, w)| w).sum();
        let normalized: Vec<(Mask, f64)> =
            masses.into_iter().map(|(t, w)| (t, w / total)).collect();
        mu.insert(menu, &normalized).expect("normalized");
    }
    mu
}

/// Independent consideration: each alternative enters with its own fixed
/// probability. The empty consideration set is excluded from the model, so
/// its mass is redistributed proportionally over nonempty subsets; the
/// menu-invariance of the attention frequency holds only before that
/// renormalization.
pub fn independent_consideration(
    domain: &Domain,
    gamma: &BTreeMap<usize, f64>,
) -> Result<AttentionRule> {
    for (&alt, &g) in gamma {
        if !(g > 0.0 && g < 1.0) {
            return Err(Error::GammaOutOfRange(alt, g));
        }
    }
    let mut mu = AttentionRule::new();
    for &menu in domain.menus() {
        for alt in menu.iter() {
            if !gamma.contains_key(&alt) {
                return Err(Error::GammaOutOfRange(alt, f64::NAN));
            }
        }
        let mut masses = Vec::new();
        let mut total = 0.0;
        for t in menu.mask().nonempty_subsets() {
            let mut w = 1.0;
            for alt in menu.iter() {
                let g = gamma[&alt];
                w *= if t.contains(alt) { g } else { 1.0 - g };
            }
            total += w;
            masses.push((t, w));
        }
        for m in &mut masses {
            m.1 /= total;
        }
        mu.insert(menu, &masses)?;
    }
    Ok(mu)
}

/// A weighted deterministic consideration map for `random_competition_filter`.
pub struct WeightedFilter<'a> {
    pub weight: f64,
    pub map: Box<dyn Fn(Menu) -> Menu + 'a>,
}

/// Mixture of deterministic competition filters. Each map must send a menu to
/// a nonempty subset of itself and satisfy the competition-filter property
/// (anything noticed in a big menu stays noticed in smaller ones); both are
/// validated over the domain.
pub fn random_competition_filter(
    domain: &Domain,
    filters: &[WeightedFilter<'_>],
) -> Result<AttentionRule> {
    let total: f64 = filters.iter().map(|f| f.weight).sum();
    if (total - 1.0).abs() > PROB_TOL || filters.iter().any(|f| f.weight < 0.0) {
        return Err(Error::WeightsNotSimplex(total));
    }
    // Evaluate and validate each filter on every menu.
    let mut images: Vec<Vec<Menu>> = Vec::with_capacity(filters.len());
    for (j, f) in filters.iter().enumerate() {
        let mut per_menu = Vec::with_capacity(domain.len());
        for &menu in domain.menus() {
            let image = (f.map)(menu);
            if !image.is_subset_of(menu) {
                return Err(Error::FilterViolation {
                    filter: j,
                    alt: image.mask().minus(menu.mask()).iter().next().unwrap_or(0),
                    sub: menu.mask().0,
                    sup: menu.mask().0,
                });
            }
            per_menu.push(image);
        }
        images.push(per_menu);
    }
    for (j, per_menu) in images.iter().enumerate() {
        for (ti, (sub, sup)) in enumerate_nested_pairs(domain).iter().enumerate() {
            let _ = ti;
            let sup_idx = domain.index_of(*sup).unwrap();
            let sub_idx = domain.index_of(*sub).unwrap();
            for alt in per_menu[sup_idx].mask().intersect(sub.mask()).iter() {
                if !per_menu[sub_idx].contains(alt) {
                    return Err(Error::FilterViolation {
                        filter: j,
                        alt,
                        sub: sub.mask().0,
                        sup: sup.mask().0,
                    });
                }
            }
        }
    }
    let mut mu = AttentionRule::new();
    for (mi, &menu) in domain.menus().iter().enumerate() {
        let mut acc: BTreeMap<Mask, f64> = BTreeMap::new();
        for (j, f) in filters.iter().enumerate() {
            *acc.entry(images[j][mi].mask()).or_insert(0.0) += f.weight;
        }
        let masses: Vec<(Mask, f64)> = acc.into_iter().collect();
        mu.insert(menu, &masses)?;
    }
    Ok(mu)
}

/// The choice rule induced by maximizing `pref` over consideration sets drawn
/// from `mu`.
pub fn induced_choice_rule(pref: &Preference, mu: &AttentionRule) -> Result<ChoiceRule> {
    let mut pi = ChoiceRule::new();
    for menu in mu.domain().menus() {
        let mut probs = vec![0.0; menu.len()];
        for (subset, p) in mu.masses(*menu)? {
            let best = pref.best_in(subset);
            probs[menu.mask().rank_of(best)] += p;
        }
        pi.insert(*menu, probs)?;
    }
    Ok(pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn menu(bits: u64) -> Menu {
        Menu::new(Mask(bits)).unwrap()
    }

    #[test]
    fn logit_pair_masses() {
        let d = Domain::new([menu(0b11)]);
        let mu = logit_attention(&d, 2.0);
        let m = menu(0b11);
        assert!((mu.mass(Mask(0b11), m).unwrap() - 4.0 / 6.0).abs() < 1e-15);
        assert!((mu.mass(Mask(0b01), m).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((mu.mass(Mask(0b10), m).unwrap() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn logit_singleton_menu_and_zero_varsigma() {
        let d = Domain::new([menu(0b1), menu(0b111)]);
        let mu = logit_attention(&d, 2.0);
        assert_eq!(mu.mass(Mask(0b1), menu(0b1)).unwrap(), 1.0);
        let uniform = logit_attention(&d, 0.0);
        for (_, p) in uniform.masses(menu(0b111)).unwrap() {
            assert!((p - 1.0 / 7.0).abs() < 1e-15);
        }
    }

    #[test]
    fn logit_attention_frequencies_match_known_values() {
        // For |S| = 2..6 under ς = 2: 0.833, 0.750, 0.700, 0.667, 0.643.
        let d = Domain::full(6, 2);
        let mu = logit_attention(&d, 2.0);
        let expect = [5.0 / 6.0, 0.750, 0.700, 2.0 / 3.0, 0.642857142857];
        for (k, &want) in (2..=6).zip(expect.iter()) {
            let m = Menu::new(Mask::full(k)).unwrap();
            let phi = attention_frequency(&mu, 0, m).unwrap();
            assert!((phi - want).abs() < 1e-9, "|S|={k}: {phi} vs {want}");
        }
    }

    #[test]
    fn independent_consideration_renormalizes_empty_mass() {
        let d = Domain::new([menu(0b11)]);
        let gamma: BTreeMap<usize, f64> = [(0, 0.5), (1, 0.5)].into();
        let mu = independent_consideration(&d, &gamma).unwrap();
        for (_, p) in mu.masses(menu(0b11)).unwrap() {
            assert!((p - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn independent_consideration_raw_frequency_is_menu_invariant() {
        // Before the empty-set renormalization the frequency equals gamma;
        // after it the frequency is gamma divided by one minus the all-miss
        // probability.
        let d = Domain::new([menu(0b11), menu(0b111)]);
        let gamma: BTreeMap<usize, f64> = [(0, 0.3), (1, 0.6), (2, 0.8)].into();
        let mu = independent_consideration(&d, &gamma).unwrap();
        for &m in d.menus() {
            let mut miss = 1.0;
            for alt in m.iter() {
                miss *= 1.0 - gamma[&alt];
            }
            for alt in m.iter() {
                let phi = attention_frequency(&mu, alt, m).unwrap();
                assert!((phi * (1.0 - miss) - gamma[&alt]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn independent_consideration_rejects_bad_gamma() {
        let d = Domain::new([menu(0b11)]);
        let gamma: BTreeMap<usize, f64> = [(0, 0.5), (1, 1.0)].into();
        assert!(matches!(
            independent_consideration(&d, &gamma),
            Err(Error::GammaOutOfRange(1, _))
        ));
    }

    #[test]
    fn rcf_identity_and_mixture() {
        let d = Domain::full(3, 1);
        let identity = random_competition_filter(
            &d,
            &[WeightedFilter {
                weight: 1.0,
                map: Box::new(|s| s),
            }],
        )
        .unwrap();
        assert_eq!(identity.mass(Mask(0b111), menu(0b111)).unwrap(), 1.0);

        // Half the time the best-by-index alternative, half the full menu.
        let mix = random_competition_filter(
            &d,
            &[
                WeightedFilter {
                    weight: 0.5,
                    map: Box::new(|s: Menu| {
                        Menu::from_alts([s.iter().next().unwrap()]).unwrap()
                    }),
                },
                WeightedFilter {
                    weight: 0.5,
                    map: Box::new(|s| s),
                },
            ],
        )
        .unwrap();
        assert_eq!(mix.mass(Mask(0b001), menu(0b111)).unwrap(), 0.5);
        assert_eq!(mix.mass(Mask(0b111), menu(0b111)).unwrap(), 0.5);
        let report = check_attention_overload(&mix, &d).unwrap();
        assert!(report.satisfied);
    }

    #[test]
    fn rcf_rejects_non_filter() {
        // Noticing alternative 1 only in the big menu violates the property.
        let d = Domain::new([menu(0b011), menu(0b111)]);
        let bad = random_competition_filter(
            &d,
            &[WeightedFilter {
                weight: 1.0,
                map: Box::new(|s: Menu| {
                    if s.len() == 3 {
                        s
                    } else {
                        Menu::from_alts([s.iter().next().unwrap()]).unwrap()
                    }
                }),
            }],
        );
        assert!(matches!(bad, Err(Error::FilterViolation { .. })));
    }

    #[test]
    fn rcf_rejects_bad_weights() {
        let d = Domain::full(2, 1);
        let bad = random_competition_filter(
            &d,
            &[WeightedFilter {
                weight: 0.7,
                map: Box::new(|s| s),
            }],
        );
        assert!(matches!(bad, Err(Error::WeightsNotSimplex(_))));
    }

    #[test]
    fn overload_check_on_tabulated_rules() {
        // Full attention at the triple, only singletons at pairs: satisfies
        // monotonic attention but not attention overload.
        let d = Domain::full(3, 2);
        let mut ram_style = AttentionRule::new();
        ram_style
            .insert(menu(0b111), &[(Mask(0b111), 1.0)])
            .unwrap();
        for pair in [0b011u64, 0b101, 0b110] {
            let m = menu(pair);
            let alts: Vec<usize> = m.iter().collect();
            ram_style
                .insert(
                    m,
                    &[
                        (Mask::singleton(alts[0]), 0.5),
                        (Mask::singleton(alts[1]), 0.5),
                    ],
                )
                .unwrap();
        }
        let report = check_attention_overload(&ram_style, &d).unwrap();
        assert!(!report.satisfied);
        let v = report
            .violations
            .iter()
            .find(|v| v.alt == 0 && v.sub == menu(0b011))
            .expect("violation at (a, {a,b}, {a,b,c})");
        assert_eq!(v.phi_sup, 1.0);
        assert_eq!(v.phi_sub, 0.5);

        // Singletons at the triple, full attention at pairs: satisfies
        // attention overload but not monotonic attention.
        let mut aom_style = AttentionRule::new();
        aom_style
            .insert(
                menu(0b111),
                &[
                    (Mask(0b001), 1.0 / 3.0),
                    (Mask(0b010), 1.0 / 3.0),
                    (Mask(0b100), 1.0 / 3.0),
                ],
            )
            .unwrap();
        for pair in [0b011u64, 0b101, 0b110] {
            aom_style.insert(menu(pair), &[(Mask(pair), 1.0)]).unwrap();
        }
        assert!(check_attention_overload(&aom_style, &d).unwrap().satisfied);
    }

    #[test]
    fn induced_rule_pair_logit() {
        let d = Domain::new([menu(0b11)]);
        let mu = logit_attention(&d, 2.0);
        let pref = Preference::natural(2);
        let pi = induced_choice_rule(&pref, &mu).unwrap();
        assert!((pi.prob(0, menu(0b11)).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert!((pi.prob(1, menu(0b11)).unwrap() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn full_attention_is_degenerate_choice() {
        let d = Domain::full(3, 1);
        let full = random_competition_filter(
            &d,
            &[WeightedFilter {
                weight: 1.0,
                map: Box::new(|s| s),
            }],
        )
        .unwrap();
        let pref = Preference::from_order(&[2, 0, 1]).unwrap();
        let pi = induced_choice_rule(&pref, &full).unwrap();
        assert_eq!(pi.prob(2, menu(0b111)).unwrap(), 1.0);
    }

    #[test]
    fn best_alternative_choice_equals_attention_frequency() {
        let d = Domain::full(4, 2);
        let mu = logit_attention(&d, 1.5);
        let pref = Preference::from_order(&[1, 3, 0, 2]).unwrap();
        let pi = induced_choice_rule(&pref, &mu).unwrap();
        for &m in d.menus() {
            if m.contains(1) {
                let phi = attention_frequency(&mu, 1, m).unwrap();
                assert!((pi.prob(1, m).unwrap() - phi).abs() < 1e-12);
            }
            // Attention is a prerequisite for choice.
            for alt in m.iter() {
                let phi = attention_frequency(&mu, alt, m).unwrap();
                assert!(pi.prob(alt, m).unwrap() <= phi + 1e-12);
            }
        }
    }
}
