use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::Monomial;

/// A monomial order. Every variant is a multiplicative well-order as long as weights are
/// non-negative and the inner orders are themselves well-orders.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// The first `split` variables are compared with `first`; ties are broken on the rest with `second`.
    Block {
        split: usize,
        first: Box<MonomialOrder>,
        second: Box<MonomialOrder>,
    },
    /// Compare the weighted degree first, then fall back on `tiebreak`.
    Weighted {
        weights: Vec<u32>,
        tiebreak: Box<MonomialOrder>,
    },
}


impl MonomialOrder {
    /// The elimination order used throughout: total degree in the masked variables first,
    /// degrevlex afterwards.
    pub fn eliminating(mask: &[bool]) -> Self {
        MonomialOrder::Weighted {
            weights: mask.iter().map(|&b| u32::from(b)).collect(),
            tiebreak: Box::new(MonomialOrder::DegRevLex),
        }
    }

    pub fn weighted(weights: Vec<u32>) -> Self {
        MonomialOrder::Weighted {
            weights,
            tiebreak: Box::new(MonomialOrder::DegRevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exponents(), b.exponents())
    }

    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
                let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Block { split, first, second } => {
                let s = (*split).min(a.len());
                first
                    .cmp_exps(&a[..s], &b[..s])
                    .then_with(|| second.cmp_exps(&a[s..], &b[s..]))
            }
            MonomialOrder::Weighted { weights, tiebreak } => {
                let wa: u64 = a.iter().zip(weights).map(|(&e, &w)| u64::from(e) * u64::from(w)).sum();
                let wb: u64 = b.iter().zip(weights).map(|(&e, &w)| u64::from(e) * u64::from(w)).sum();
                wa.cmp(&wb).then_with(|| tiebreak.cmp_exps(a, b))
            }
        }
    }

    /// Checks that weights and block splits fit a ring with `nvars` variables.
    pub fn fits(&self, nvars: usize) -> bool {
        match self {
            MonomialOrder::Lex | MonomialOrder::DegRevLex => true,
            MonomialOrder::Block { split, first, second } => {
                *split <= nvars && first.fits(*split) && second.fits(nvars - split)
            }
            MonomialOrder::Weighted { weights, tiebreak } => weights.len() == nvars && tiebreak.fits(nvars),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Block { split, first, second } => write!(f, "block({split}, {first}, {second})"),
            MonomialOrder::Weighted { weights, tiebreak } => {
                write!(f, "weighted(")?;
                for (i, w) in weights.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{w}")?;
                }
                write!(f, ", {tiebreak})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::DegRevLex;
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 0, 3])), Ordering::Less);
    }

    #[test]
    fn lex_is_first_difference() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_puts_dropped_variables_first() {
        let o = MonomialOrder::eliminating(&[true, false]);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
    }

    #[test]
    fn block_order_compares_blocks_in_turn() {
        let o = MonomialOrder::Block {
            split: 1,
            first: Box::new(MonomialOrder::DegRevLex),
            second: Box::new(MonomialOrder::Lex),
        };
        assert!(o.fits(3));
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 4, 4])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[1, 0, 4])), Ordering::Greater);
    }
}
