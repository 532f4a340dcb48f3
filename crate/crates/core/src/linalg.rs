//! Small exact linear algebra over ℚ: row reduction, affine solution spaces
//! and Fourier–Motzkin feasibility for systems with a handful of unknowns.

use num_traits::{Signed, Zero};

use crate::hquat::{int, Rational};

/// Affine solution set `particular + span(kernel)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }
}

/// Reduced row echelon form in place; returns the pivot columns among the
/// first `ncols` columns.
fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let (pivot_row, target) = if r < row {
                    let (lo, hi) = m.split_at_mut(row);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = m.split_at_mut(r);
                    (&lo[row], &mut hi[0])
                };
                for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                    *t -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves `rows · x = rhs` for `x ∈ ℚ^n`; `None` when inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], n: usize) -> Option<AffineSolution> {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n);
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut m, n);
    // a zero row with nonzero right-hand side
    if m[pivots.len()..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut particular = vec![int(0); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![int(0); n];
            v[f] = int(1);
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(n) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    rref(&mut m, n).len()
}

/// `coeffs · x ≤ rhs` (or `=` when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint { coeffs, rhs }
    }
}

/// Decides exactly whether some `x ∈ ℚ^n` satisfies every equality and
/// every (non-strict) inequality.
///
/// Equalities are removed by parametrising their solution space, then the
/// free parameters are eliminated one at a time by Fourier–Motzkin.
pub fn feasible(equalities: &[Constraint], inequalities: &[Constraint], n: usize) -> bool {
    let rows: Vec<Vec<Rational>> = equalities.iter().map(|c| c.coeffs.clone()).collect();
    let rhs: Vec<Rational> = equalities.iter().map(|c| c.rhs.clone()).collect();
    let Some(sol) = solve(&rows, &rhs, n) else {
        return false;
    };
    let dot = |a: &[Rational], b: &[Rational]| -> Rational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    // in terms of the kernel parameters y: (a·K) y ≤ b − a·p
    let mut system: Vec<Constraint> = inequalities
        .iter()
        .map(|c| {
            let coeffs = sol.kernel.iter().map(|k| dot(&c.coeffs, k)).collect();
            Constraint::new(coeffs, &c.rhs - dot(&c.coeffs, &sol.particular))
        })
        .collect();
    for var in (0..sol.kernel.len()).rev() {
        system = eliminate(system, var);
    }
    system.iter().all(|c| !c.rhs.is_negative())
}

/// One Fourier–Motzkin step: removes variable `var` (the last remaining one).
fn eliminate(system: Vec<Constraint>, var: usize) -> Vec<Constraint> {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut rest = Vec::new();
    for mut c in system {
        let a = c.coeffs[var].clone();
        if a.is_zero() {
            c.coeffs.truncate(var);
            rest.push(c);
            continue;
        }
        // normalise to ±x_var + ... ≤ rhs
        let scale = a.abs().recip();
        let coeffs: Vec<Rational> = c.coeffs[..var].iter().map(|x| x * &scale).collect();
        let normalised = Constraint::new(coeffs, &c.rhs * &scale);
        if a.is_positive() {
            upper.push(normalised);
        } else {
            lower.push(normalised);
        }
    }
    for u in &upper {
        for l in &lower {
            let coeffs = u.coeffs.iter().zip(&l.coeffs).map(|(x, y)| x + y).collect();
            let c = Constraint::new(coeffs, &u.rhs + &l.rhs);
            if !rest.contains(&c) {
                rest.push(c);
            }
        }
    }
    rest
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hquat::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solves_full_rank_system() {
        let rows = vec![ints(&[2, 1]), ints(&[1, -1])];
        let sol = solve(&rows, &ints(&[3, 0]), 2).unwrap();
        assert_eq!(sol.particular, ints(&[1, 1]));
        assert_eq!(sol.dimension(), 0);
    }

    #[test]
    fn reports_kernel_and_inconsistency() {
        let rows = vec![ints(&[1, 0, 0, 0]), ints(&[0, 1, 1, 1])];
        let sol = solve(&rows, &ints(&[0, 0]), 4).unwrap();
        assert_eq!(sol.dimension(), 2);
        for k in &sol.kernel {
            assert!(k[0].is_zero());
            assert!((&k[1] + &k[2] + &k[3]).is_zero());
        }
        let rows = vec![ints(&[1, 1]), ints(&[2, 2])];
        assert!(solve(&rows, &ints(&[1, 3]), 2).is_none());
        assert_eq!(rank(&rows), 1);
    }

    #[test]
    fn fourier_motzkin_on_the_unit_square() {
        let square = |x: i64, y: i64, r: i64| Constraint::new(ints(&[x, y]), int(r));
        let box_ = vec![square(1, 0, 1), square(-1, 0, 0), square(0, 1, 1), square(0, -1, 0)];
        assert!(feasible(&[], &box_, 2));
        let on_diagonal = Constraint::new(ints(&[1, 1]), int(2));
        assert!(feasible(std::slice::from_ref(&on_diagonal), &box_, 2));
        let beyond = Constraint::new(ints(&[1, 1]), rat(5, 2));
        assert!(!feasible(&[beyond], &box_, 2));
        let tight = Constraint::new(ints(&[1, 1]), int(2));
        let mut cut = box_.clone();
        cut.push(Constraint::new(ints(&[1, 0]), rat(99, 100)));
        assert!(!feasible(&[tight], &cut, 2));
    }
}
