//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// Consistent, but the columns have rank `rank < unknowns`.
    Underdetermined { rank: usize },
}

/// Solves `A x = b`, where each row is `[a_1, .., a_k, b]`.
pub fn solve(mut rows: Vec<Vec<Rational>>, unknowns: usize) -> Solution {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = Rational::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in col..=unknowns {
                    let d = rows[r][j].clone() * f.clone();
                    rows[i][j] = rows[i][j].clone() - d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return Solution::Inconsistent;
    }
    if r < unknowns {
        return Solution::Underdetermined { rank: r };
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][unknowns].clone();
    }
    Solution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unique_solution() {
        // x + y = 3, x - y = 1
        let s = solve(vec![row(&[1, 1, 3]), row(&[1, -1, 1])], 2);
        assert_eq!(s, Solution::Unique(vec![int(2), int(1)]));
        let s = solve(vec![row(&[2, 1]), row(&[4, 2]), row(&[0, 0])], 1);
        assert_eq!(s, Solution::Unique(vec![rat(1, 2)]));
    }

    #[test]
    fn inconsistent_and_rank_deficient() {
        assert_eq!(solve(vec![row(&[1, 1]), row(&[1, 2])], 1), Solution::Inconsistent);
        assert_eq!(solve(vec![row(&[1, 1, 2]), row(&[2, 2, 4])], 2), Solution::Underdetermined { rank: 1 });
        assert_eq!(solve(vec![row(&[0, 0])], 1), Solution::Underdetermined { rank: 0 });
    }
}
