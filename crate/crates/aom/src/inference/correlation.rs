//! Correlation of estimated inequality constraints.
//!
//! Every estimated quantity here is a linear combination of per-menu event
//! probabilities. Estimates from different menus come from independent
//! subsamples, so the covariance of two combinations is a sum over shared
//! menus of multinomial event covariances,
//!
//! Cov(π̂(A|W), π̂(B|W)) = (π̂(A∩B|W) − π̂(A|W)·π̂(B|W)) / N_W,
//!
//! weighted by the combination coefficients. That covariance block is
//! (1/N_W)(diag(p) − p pᵀ) with the exact square root
//! B_W = (1/√N_W)(diag(√p) − p √pᵀ), which gives every correlation matrix
//! built from data an explicit factor Ω̂ = FFᵀ. Simulation draws use the
//! factor directly: F·g with g standard normal has law N(0, Ω̂), the same law
//! as the symmetric-square-root construction, without an eigendecomposition
//! in the replication loop. Matrices supplied as plain arrays fall back to a
//! symmetric eigendecomposition with negative eigenvalues clipped to zero.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::characterize::constraints::{ConstraintKind, ConstraintSystem};
use crate::core::alphabet::Menu;
use crate::core::choice::ChoiceRule;
use crate::core::mask::Mask;
use crate::error::{Error, Result};

/// One additive term of an estimated statistic: `coeff * π̂(event|menu)`.
#[derive(Clone, Copy, Debug)]
pub struct EventTerm {
    pub coeff: f64,
    pub event: Mask,
    pub menu: Menu,
}

/// The event-term decomposition of a constraint's estimated value (the
/// constant part plays no role in the covariance).
pub fn constraint_terms(system: &ConstraintSystem) -> Vec<Vec<EventTerm>> {
    let pref = system.preference();
    system
        .constraints()
        .iter()
        .map(|c| match c.kind {
            ConstraintKind::Ac => vec![
                EventTerm {
                    coeff: 1.0,
                    event: Mask::singleton(c.alt),
                    menu: c.sup,
                },
                EventTerm {
                    coeff: -1.0,
                    event: pref.upper_contour_mask(c.alt, false).intersect(c.sub.mask()),
                    menu: c.sub,
                },
            ],
            ConstraintKind::Ram => vec![
                EventTerm {
                    coeff: 1.0,
                    event: Mask::singleton(c.alt),
                    menu: c.sup,
                },
                EventTerm {
                    coeff: -1.0,
                    event: Mask::singleton(c.alt),
                    menu: c.sub,
                },
            ],
            ConstraintKind::BinaryEta => vec![EventTerm {
                coeff: 1.0 / c.eta.expect("binary constraint carries eta"),
                event: Mask::singleton(c.alt),
                menu: c.sup,
            }],
        })
        .collect()
}

/// Covariance of two event-term combinations under the plug-in multinomial
/// law.
pub fn term_covariance(pi: &ChoiceRule, a: &[EventTerm], b: &[EventTerm]) -> Result<f64> {
    let mut cov = 0.0;
    for u in a {
        for v in b {
            if u.menu != v.menu {
                continue;
            }
            let n = pi
                .sample_size(u.menu)
                .ok_or(Error::MenuMissing(u.menu.mask().0))?;
            let p_joint = pi.event_prob(u.event.intersect(v.event), u.menu)?;
            let p_u = pi.event_prob(u.event, u.menu)?;
            let p_v = pi.event_prob(v.event, v.menu)?;
            cov += u.coeff * v.coeff * (p_joint - p_u * p_v) / n as f64;
        }
    }
    Ok(cov)
}

/// A correlation matrix with unit diagonal and a factor `F` with `FFᵀ = Ω̂`,
/// used to draw `N(0, Ω̂)` vectors.
#[derive(Clone, Debug)]
pub struct CorrelationMatrix {
    dim: usize,
    /// Number of latent standard normals one draw consumes.
    factor_cols: usize,
    /// Sparse factor rows: (column, weight) pairs.
    rows: Vec<Vec<(u32, f64)>>,
}

impl CorrelationMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factor_cols(&self) -> usize {
        self.factor_cols
    }

    /// Apply the factor to a latent vector: one draw of `N(0, Ω̂)`.
    pub fn apply(&self, latent: &[f64], out: &mut Vec<f64>) {
        debug_assert_eq!(latent.len(), self.factor_cols);
        out.clear();
        out.extend(self.rows.iter().map(|row| {
            row.iter().map(|&(j, w)| w * latent[j as usize]).sum::<f64>()
        }));
    }

    /// Ω̂ entry by sparse dot product of factor rows.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        let (mut a, mut b) = (self.rows[i].iter().peekable(), self.rows[j].iter().peekable());
        let mut dot = 0.0;
        while let (Some(&&(ca, wa)), Some(&&(cb, wb))) = (a.peek(), b.peek()) {
            match ca.cmp(&cb) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    dot += wa * wb;
                    a.next();
                    b.next();
                }
            }
        }
        dot.clamp(-1.0, 1.0)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            m[(i, i)] = 1.0;
            for j in 0..i {
                let v = self.entry(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    /// Identity correlation of a given dimension (independent coordinates).
    pub fn identity(dim: usize) -> CorrelationMatrix {
        CorrelationMatrix {
            dim,
            factor_cols: dim,
            rows: (0..dim).map(|i| vec![(i as u32, 1.0)]).collect(),
        }
    }

    /// Build from a dense symmetric matrix with unit diagonal. The factor is
    /// the symmetric square root after clipping negative eigenvalues to zero,
    /// so near-PSD inputs are handled deterministically.
    pub fn from_dense(matrix: DMatrix<f64>) -> Result<CorrelationMatrix> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.ncols(),
            });
        }
        let eigen = SymmetricEigen::new(matrix);
        let mut vals = eigen.eigenvalues;
        for v in vals.iter_mut() {
            *v = v.max(0.0).sqrt();
        }
        let u = eigen.eigenvectors;
        let sqrt = &u * DMatrix::from_diagonal(&vals) * u.transpose();
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .filter_map(|j| {
                        let w = sqrt[(i, j)];
                        (w != 0.0).then_some((j as u32, w))
                    })
                    .collect()
            })
            .collect();
        Ok(CorrelationMatrix {
            dim,
            factor_cols: dim,
            rows,
        })
    }

    /// Build from event-term rows on estimated data. Each statistic's terms
    /// are scaled by its standard deviation (the square root of its own
    /// bilinear variance), giving unit diagonal exactly. Errors on degenerate
    /// (zero-variance) statistics, which callers exclude beforehand.
    pub fn from_event_terms(
        pi: &ChoiceRule,
        terms: &[Vec<EventTerm>],
    ) -> Result<CorrelationMatrix> {
        // Column layout: for each distinct menu (ascending), one column per
        // member.
        let mut menus: Vec<Menu> = terms
            .iter()
            .flatten()
            .map(|t| t.menu)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        menus.sort_unstable();
        let mut offset = std::collections::BTreeMap::new();
        let mut cols = 0usize;
        for &m in &menus {
            offset.insert(m, cols);
            cols += m.len();
        }

        let mut rows = Vec::with_capacity(terms.len());
        for (idx, row_terms) in terms.iter().enumerate() {
            let var = term_covariance(pi, row_terms, row_terms)?;
            if var <= 0.0 {
                return Err(Error::DegenerateStatistic(idx));
            }
            let inv_sd = 1.0 / var.sqrt();
            let mut entries: std::collections::BTreeMap<u32, f64> = std::collections::BTreeMap::new();
            for t in row_terms {
                let n = pi
                    .sample_size(t.menu)
                    .ok_or(Error::MenuMissing(t.menu.mask().0))?;
                let probs = pi.probs_for(t.menu)?;
                let p_event = pi.event_prob(t.event, t.menu)?;
                let base = offset[&t.menu] as u32;
                let scale = t.coeff * inv_sd / (n as f64).sqrt();
                for (rank, alt) in t.menu.iter().enumerate() {
                    let q = probs[rank].sqrt();
                    let indicator = if t.event.contains(alt) { 1.0 } else { 0.0 };
                    let w = scale * q * (indicator - p_event);
                    if w != 0.0 {
                        *entries.entry(base + rank as u32).or_insert(0.0) += w;
                    }
                }
            }
            rows.push(entries.into_iter().collect::<Vec<(u32, f64)>>());
        }
        Ok(CorrelationMatrix {
            dim: terms.len(),
            factor_cols: cols,
            rows,
        })
    }
}

/// The estimated correlation matrix of a constraint system's D-hats. All
/// constraints must be non-degenerate; `test_preference` filters degenerate
/// ones out first.
pub fn estimate_correlation(
    pi_hat: &ChoiceRule,
    system: &ConstraintSystem,
) -> Result<CorrelationMatrix> {
    let terms = constraint_terms(system);
    CorrelationMatrix::from_event_terms(pi_hat, &terms)
}
