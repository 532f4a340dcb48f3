//! Abelianisation of a finite presentation via the Smith normal form of
//! its relator exponent matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::words::Presentation;

/// `ℤ^free_rank ⊕ ⨁ ℤ/dᵢ` with `d₁ | d₂ | …` and every `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

fn serialize_factors<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.insert(0, "Z".into()),
            r => parts.insert(0, format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Row `r`, column `g`: the exponent sum of generator `g` in relator `r`.
pub fn exponent_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); p.generator_count()];
            for &x in r {
                row[x.unsigned_abs() as usize - 1] += x.signum();
            }
            row
        })
        .collect()
}

/// Diagonal of the Smith normal form (nonzero entries, nonnegative, each
/// dividing the next).
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero entry of the remaining block
        loop {
            let Some((pr, pc)) = (t..rows)
                .flat_map(|r| (t..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| !m[r][c].is_zero())
                .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()))
            else {
                return diagonal;
            };
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
            let pivot = m[t][t].clone();
            let mut clean = true;
            for r in t + 1..rows {
                let q = m[r][t].div_floor(&pivot);
                if !q.is_zero() {
                    for c in t..cols {
                        let delta = &q * &m[t][c];
                        m[r][c] -= delta;
                    }
                }
                clean &= m[r][t].is_zero();
            }
            for c in t + 1..cols {
                let q = m[t][c].div_floor(&pivot);
                if !q.is_zero() {
                    for r in t..rows {
                        let delta = &q * &m[r][t];
                        m[r][c] -= delta;
                    }
                }
                clean &= m[t][c].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !m[r][c].is_multiple_of(&pivot)));
            match bad {
                Some(r) => {
                    for c in t..cols {
                        let v = m[r][c].clone();
                        m[t][c] += v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(m[t][t].abs());
    }
    diagonal
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let diagonal = smith_diagonal(exponent_matrix(p));
    AbelianInvariants {
        free_rank: p.generator_count() - diagonal.len(),
        torsion: diagonal.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::words::invert_word;
    use proptest::prelude::*;

    fn ab(gens: &[&str], rels: &str) -> String {
        abelianization(&Presentation::parse_with_generators(gens, rels).unwrap()).to_string()
    }

    const ABCD: [&str; 4] = ["a", "b", "c", "d"];

    #[test]
    fn examples() {
        assert_eq!(ab(&["s"], "s^5"), "Z/5");
        assert_eq!(ab(&ABCD, "abd,bcd,cad"), "Z");
        assert_eq!(ab(&ABCD, "abd,bcd,cad,cba"), "Z/3");
        assert_eq!(ab(&["a", "b"], "a^2,b^4"), "Z/2 + Z/4");
        assert_eq!(ab(&["a", "b"], "a^6,b^4"), "Z/2 + Z/12");
        assert_eq!(ab(&["a", "b", "c"], "abAB"), "Z^3");
        assert_eq!(ab(&["a"], "a"), "1");
    }

    #[test]
    fn diagonal_divisibility() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(-4), BigInt::from(-16)],
        ];
        let d = smith_diagonal(m);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    proptest! {
        #[test]
        fn invariant_under_relabelling_rotation_and_inversion(
            rels in prop::collection::vec(prop::collection::vec(prop::sample::select(vec![1i32, -1, 2, -2, 3, -3]), 1..6), 1..4),
            rot in 0usize..6, flip in 0u32..8
        ) {
            let gens = vec!["a".to_string(), "b".to_string(), "c".to_string()];
            let p = Presentation::new(gens.clone(), rels.clone()).unwrap();
            // cycle the generator names, invert some of them, rotate relators
            let moved: Vec<Vec<i32>> = rels
                .iter()
                .map(|r| {
                    let k = rot % r.len();
                    r[k..].iter().chain(&r[..k]).map(|&x| {
                        let g = x.abs() % 3 + 1;
                        let s = if flip & (1 << (g - 1)) != 0 { -x.signum() } else { x.signum() };
                        g * s
                    }).collect()
                })
                .map(|r: Vec<i32>| if rot % 2 == 0 { r } else { invert_word(&r) })
                .collect();
            let q = Presentation::new(gens, moved).unwrap();
            prop_assert_eq!(abelianization(&p), abelianization(&q));
        }
    }
}
