//! Exact phase-one simplex for `A x = b, x >= 0` over the rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! basic variable on ratio ties), which rules out cycling. When the system is
//! infeasible the optimal phase-one duals give a Farkas vector `y` with
//! `yᵀA <= 0` and `yᵀb > 0`.

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Phase1 {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

/// `a` is row-major with `b.len()` rows of equal width.
pub(crate) fn feasibility(a: &[Vec<Rational>], b: &[Rational]) -> Phase1 {
    let m = b.len();
    let r = a.first().map_or(0, Vec::len);
    let width = r + m + 1;
    let rhs = r + m;

    let mut sign = vec![Rational::one(); m];
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        if b[i].is_negative() {
            sign[i] = -Rational::one();
        }
        for j in 0..r {
            row[j] = &a[i][j] * &sign[i];
        }
        row[r + i] = Rational::one();
        row[rhs] = &b[i] * &sign[i];
        t.push(row);
    }
    let mut basis: Vec<usize> = (r..r + m).collect();

    // Reduced costs of min Σ artificials; the last entry is minus the
    // objective value.
    let mut d = vec![Rational::zero(); width];
    for j in (0..r).chain(std::iter::once(rhs)) {
        d[j] = -t
            .iter()
            .map(|row| row[j].clone())
            .fold(Rational::zero(), |s, v| s + v);
    }

    while let Some(enter) = (0..r + m).find(|&j| d[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut d, row, enter);
        basis[row] = enter;
    }

    if d[rhs].is_zero() {
        let mut x = vec![Rational::zero(); r];
        for (i, &v) in basis.iter().enumerate() {
            if v < r {
                x[v] = t[i][rhs].clone();
            }
        }
        Phase1::Feasible(x)
    } else {
        let y = (0..m)
            .map(|i| (Rational::one() - &d[r + i]) * &sign[i])
            .collect();
        Phase1::Infeasible(y)
    }
}

fn pivot(t: &mut [Vec<Rational>], d: &mut [Rational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, other) in t.iter_mut().enumerate() {
        if i == row || other[col].is_zero() {
            continue;
        }
        let f = other[col].clone();
        for (v, pv) in other.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
    if !d[col].is_zero() {
        let f = d[col].clone();
        for (v, pv) in d.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| q(v, 1)).collect())
            .collect()
    }

    fn check_feasible(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            let lhs = row
                .iter()
                .zip(x)
                .fold(Rational::zero(), |s, (u, v)| s + u * v);
            assert_eq!(&lhs, bi);
        }
    }

    #[test]
    fn simple_feasible_system() {
        let a = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec![q(1, 1), q(1, 2)];
        match feasibility(&a, &b) {
            Phase1::Feasible(x) => check_feasible(&a, &b, &x),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_is_handled() {
        let a = mat(&[&[-1, -2]]);
        let b = vec![q(-3, 1)];
        match feasibility(&a, &b) {
            Phase1::Feasible(x) => check_feasible(&a, &b, &x),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_system_yields_farkas_vector() {
        // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold.
        let a = mat(&[&[1, 1], &[1, 1]]);
        let b = vec![q(1, 1), q(2, 1)];
        let Phase1::Infeasible(y) = feasibility(&a, &b) else {
            panic!("expected infeasible")
        };
        for j in 0..2 {
            let col = a
                .iter()
                .zip(&y)
                .fold(Rational::zero(), |s, (row, yi)| s + &row[j] * yi);
            assert!(!col.is_positive());
        }
        let yb = b
            .iter()
            .zip(&y)
            .fold(Rational::zero(), |s, (u, v)| s + u * v);
        assert!(yb.is_positive());
    }

    #[test]
    fn redundant_rows_are_fine() {
        let a = mat(&[&[1, 0, 1], &[1, 0, 1], &[0, 1, 0]]);
        let b = vec![q(2, 3), q(2, 3), q(1, 3)];
        match feasibility(&a, &b) {
            Phase1::Feasible(x) => check_feasible(&a, &b, &x),
            other => panic!("{other:?}"),
        }
    }
}
