//! Phase-1 simplex for linear feasibility: find x ≥ 0 with Ax = b.
//!
//! Dense tableau, Bland's rule for anti-cycling. Problem sizes here are tiny
//! (at most a few thousand variables for a 10-alternative menu), so the
//! simple textbook method is exact enough and fast enough.

/// Feasibility tolerance.
pub const LP_TOL: f64 = 1e-9;

/// Solve `Ax = b, x >= 0`. Returns a feasible x or `None` when the artificial
/// objective cannot be driven to zero.
pub fn feasible_point(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let m = a.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let n = a[0].len();
    debug_assert!(b.len() == m && a.iter().all(|row| row.len() == n));

    // Flip rows so b >= 0, then add one artificial variable per row.
    // Tableau layout: columns 0..n are structural, n..n+m artificial, last
    // column is the RHS. The phase-1 objective minimizes the artificial sum.
    let cols = n + m + 1;
    let mut t = vec![vec![0.0; cols]; m + 1];
    for i in 0..m {
        let flip = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = flip * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][cols - 1] = flip * b[i];
    }
    // Objective row: minimize the artificial sum. With the all-artificial
    // starting basis the reduced-cost row is the negative column sum of the
    // constraint rows in structural and RHS columns, zero in artificial ones.
    for j in 0..cols {
        t[m][j] = if (n..n + m).contains(&j) {
            0.0
        } else {
            -(0..m).map(|i| t[i][j]).sum::<f64>()
        };
    }

    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering variable is the lowest-index column with a
        // negative reduced cost.
        let mut enter = None;
        for j in 0..n + m {
            if t[m][j] < -LP_TOL {
                enter = Some(j);
                break;
            }
        }
        let Some(enter) = enter else { break };

        // Ratio test, ties broken by the lowest basis index (Bland).
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > LP_TOL {
                let ratio = t[i][cols - 1] / t[i][enter];
                if ratio < best - LP_TOL
                    || (ratio < best + LP_TOL
                        && leave.is_some_and(|l| basis[i] < basis[l]))
                {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Unbounded phase-1 objective cannot happen (bounded below by 0);
            // bail out defensively.
            return None;
        };

        // Pivot.
        let piv = t[leave][enter];
        for j in 0..cols {
            t[leave][j] /= piv;
        }
        for i in 0..=m {
            if i != leave {
                let f = t[i][enter];
                if f != 0.0 {
                    for j in 0..cols {
                        t[i][j] -= f * t[leave][j];
                    }
                }
            }
        }
        basis[leave] = enter;
    }

    // Objective value is -t[m][rhs]; feasible iff it is (numerically) zero.
    let obj = -t[m][cols - 1];
    if obj > LP_TOL {
        return None;
    }

    let mut x = vec![0.0; n];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n {
            x[bj] = t[i][cols - 1].max(0.0);
        }
        // A residual basic artificial at zero level is harmless.
    }
    Some(x)
}
