use std::collections::HashMap;

use super::Presentation;
use crate::error::{Error, Result};
use crate::groebner::{DimensionInfo, Ideal};
use crate::linalg;
use crate::poly::{CoordinateRing, Polynomial, Rational};

/// Rank of a polynomial matrix over the fraction field of `ring` (assumed a domain), by
/// fraction-free elimination with zero tests modulo the relations.
pub fn rank_over_fractions(ring: &CoordinateRing, rows: &[Vec<Polynomial>]) -> usize {
    let mut m: Vec<Vec<Polynomial>> = rows.iter().map(|r| r.iter().map(|p| ring.reduce(p)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x = ring.reduce(&(&(&pivot * &*x) - &(&f * p)));
            }
        }
        rank += 1;
    }
    rank
}

/// `b − rank(M)` over the fraction field.
pub fn generic_rank(p: &Presentation) -> usize {
    p.num_generators() - rank_over_fractions(p.ring(), &p.matrix())
}

/// `b − rank(M(point))`: the number of generators needed at a rational point.
pub fn min_generators_at(p: &Presentation, point: &[Rational]) -> Result<usize> {
    let ring = p.ring();
    if !ring.contains_point(point) {
        return Err(Error::PointNotOnVariety { point: point.iter().map(|c| c.to_string()).collect() });
    }
    let m: Vec<Vec<Rational>> = p.matrix().iter().map(|r| r.iter().map(|e| e.eval(point)).collect()).collect();
    Ok(p.num_generators() - linalg::rank(&m))
}

/// All nonzero `k × k` minors of `rows`, up to scalars and without repeats.
pub fn minors(rows: &[Vec<Polynomial>], k: usize) -> Vec<Polynomial> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if k == 0 {
        let nvars = rows.iter().flatten().next().map_or(0, |p| p.nvars());
        return vec![Polynomial::one(nvars)];
    }
    if k > nrows || k > ncols {
        return Vec::new();
    }
    assert!(ncols <= 64, "minors support at most 64 columns");
    let order = crate::poly::MonomialOrder::DegRevLex;
    let mut out: Vec<Polynomial> = Vec::new();
    for rsel in subsets(nrows, k) {
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        for csel in subsets(ncols, k) {
            let mask = csel.iter().fold(0u64, |acc, &c| acc | (1 << c));
            let d = det(rows, &rsel, 0, mask, &mut memo);
            if !d.is_zero() {
                let d = d.primitive(&order);
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Laplace expansion along row `rsel[depth]` over the columns in `mask`.
fn det(rows: &[Vec<Polynomial>], rsel: &[usize], depth: usize, mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
    if let Some(d) = memo.get(&mask) {
        return d.clone();
    }
    let r = rsel[depth];
    let nvars = rows[r][0].nvars();
    if depth + 1 == rsel.len() {
        let c = mask.trailing_zeros() as usize;
        return rows[r][c].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    let mut sign = true;
    let mut bits = mask;
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let e = &rows[r][c];
        if !e.is_zero() {
            let sub = det(rows, rsel, depth + 1, mask & !(1 << c), memo);
            let t = e * &sub;
            acc = if sign { &acc + &t } else { &acc - &t };
        }
        sign = !sign;
    }
    memo.insert(mask, acc.clone());
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `Fitt_k`: the ideal of `(b−k)`-minors of the relation matrix.
pub fn fitting_ideal(p: &Presentation, k: usize) -> Ideal {
    let ring = p.ring();
    let b = p.num_generators();
    if k >= b {
        return Ideal::unit(ring);
    }
    Ideal::new(ring, minors(&p.matrix(), b - k)).expect("minors live in the ring")
}

/// `Fitt_rank` and its dimension: the locus where the module is not locally free.
pub fn singular_locus(p: &Presentation) -> (Ideal, DimensionInfo) {
    let f = fitting_ideal(p, generic_rank(p));
    let d = f.dimension();
    (f, d)
}

/// A least-degree nonzero generator; ties go to fewer terms, then to the generator order.
pub(crate) fn least_degree_generator(ideal: &Ideal) -> Option<Polynomial> {
    ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .min_by_key(|g| (g.total_degree(), g.num_terms()))
        .cloned()
}

#[cfg(test)]
pub(crate) fn rational_point(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_integer(v.into())).collect()
}
