use num_traits::{One, Signed, Zero};

use super::Rational;

/// Reduced row echelon form of `[A | b]` with its pivot columns, or `None`
/// if the system is inconsistent.
fn reduce(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<(Vec<Vec<Rational>>, Vec<usize>)> {
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for k in c..=ncols {
                    let d = &factor * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    Some((rows, pivots))
}

/// Solution with every free variable equal to `t`.
fn solution_at(rows: &[Vec<Rational>], pivots: &[usize], ncols: usize, t: &Rational) -> Vec<Rational> {
    let mut x = vec![t.clone(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        let mut v = rows[i][ncols].clone();
        for k in 0..ncols {
            if k != c && !pivots.contains(&k) {
                v -= &rows[i][k] * t;
            }
        }
        x[c] = v;
    }
    x
}

/// Solve `A x = b` over Q by Gauss-Jordan elimination.
///
/// Returns `None` if the system is inconsistent. Free variables of a
/// positive-dimensional solution space are set to 1.
pub fn solve_with_free_ones(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let (rows, pivots) = reduce(a, b, ncols)?;
    Some(solution_at(&rows, &pivots, ncols, &Rational::one()))
}

/// Like [`solve_with_free_ones`], but looks for a solution with all entries
/// positive on the line where every free variable equals a common `t > 0`.
/// Prefers `t = 1`; returns the `t = 1` solution if no `t` works.
pub fn solve_preferring_positive(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let (rows, pivots) = reduce(a, b, ncols)?;
    let one = Rational::one();
    let has_free = pivots.len() < ncols;
    if !has_free {
        return Some(solution_at(&rows, &pivots, ncols, &one));
    }
    // x_c = a_c - b_c t on pivot columns; t > 0 on free ones
    let mut lo = Rational::zero();
    let mut hi: Option<Rational> = None;
    let mut feasible = true;
    for (i, &c) in pivots.iter().enumerate() {
        let a_c = rows[i][ncols].clone();
        let b_c: Rational = (0..ncols)
            .filter(|k| *k != c && !pivots.contains(k))
            .map(|k| rows[i][k].clone())
            .fold(Rational::zero(), |acc, v| acc + v);
        if b_c.is_zero() {
            feasible &= a_c.is_positive();
        } else if b_c.is_positive() {
            let bound = &a_c / &b_c;
            hi = Some(match hi {
                Some(h) if h < bound => h,
                _ => bound,
            });
        } else {
            let bound = &a_c / &b_c;
            if bound > lo {
                lo = bound;
            }
        }
    }
    let t = match &hi {
        _ if !feasible => one,
        Some(h) if *h <= lo => one,
        Some(h) if lo < one && one < *h => one,
        Some(h) => (&lo + h) / Rational::from_integer(2.into()),
        None if lo < one => one,
        None => &lo + &one,
    };
    Some(solution_at(&rows, &pivots, ncols, &t))
}
