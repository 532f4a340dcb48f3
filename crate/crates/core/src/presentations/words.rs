//! Finite presentations: words over named generators, parsing, free
//! reduction and comparison up to the obvious symmetries.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A letter is a generator index `g ≥ 1` (positive) or its inverse `-g`.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// Cancels adjacent `x x⁻¹` pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free reduction followed by cancelling the ends against each other.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut out = free_reduce(w);
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    out
}

/// The least rotation of `w` or of its inverse: one representative per
/// class of cyclic words up to inversion.
pub fn cyclic_canonical(w: &[i32]) -> Word {
    let w = cyclic_reduce(w);
    let inv = invert_word(&w);
    let mut best = w.clone();
    for word in [&w, &inv] {
        for r in 0..word.len() {
            let rotated: Word = word[r..].iter().chain(&word[..r]).copied().collect();
            if rotated < best {
                best = rotated;
            }
        }
    }
    best
}

fn parse_words(text: &str, generators: &mut Vec<String>, fixed: bool) -> Result<Vec<Word>> {
    let fail = |reason: String| Error::Parse { what: "presentation", input: text.to_string(), reason };
    let mut relators = Vec::new();
    for part in text.split(',') {
        let part: String = part.chars().filter(|c| !c.is_whitespace()).collect();
        if part.is_empty() {
            return Err(fail("empty relator".into()));
        }
        let chars: Vec<char> = part.chars().collect();
        let mut word = Word::new();
        let mut pos = 0;
        while pos < chars.len() {
            let ch = chars[pos];
            if !ch.is_ascii_alphabetic() {
                return Err(fail(format!("unexpected '{ch}'")));
            }
            let name = ch.to_ascii_lowercase().to_string();
            let index = match generators.iter().position(|g| *g == name) {
                Some(n) => n,
                None if fixed => return Err(fail(format!("unknown generator '{name}'"))),
                None => {
                    generators.push(name);
                    generators.len() - 1
                }
            };
            let letter = index as i32 + 1;
            let mut power: i64 = if ch.is_ascii_uppercase() { -1 } else { 1 };
            pos += 1;
            if chars.get(pos) == Some(&'^') {
                pos += 1;
                let start = pos;
                if chars.get(pos) == Some(&'-') {
                    pos += 1;
                }
                while chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                    pos += 1;
                }
                let exponent: String = chars[start..pos].iter().collect();
                let e: i64 = exponent.parse().map_err(|_| fail(format!("bad exponent '{exponent}'")))?;
                if e.unsigned_abs() > 1 << 16 {
                    return Err(fail(format!("exponent {e} too large")));
                }
                power *= e;
            }
            let letter = if power < 0 { -letter } else { letter };
            word.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        if word.is_empty() {
            return Err(fail(format!("relator '{part}' is empty")));
        }
        relators.push(word);
    }
    Ok(relators)
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        let n = generators.len() as i32;
        for r in &relators {
            if r.is_empty() || r.iter().any(|&x| x == 0 || x.abs() > n) {
                return Err(Error::Parse {
                    what: "presentation",
                    input: format!("{r:?}"),
                    reason: "relator must be a nonempty word over the generators".into(),
                });
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses relators over the given generator names.
    pub fn parse_with_generators(generators: &[&str], text: &str) -> Result<Presentation> {
        let mut gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        let relators = parse_words(text, &mut gens, true)?;
        Presentation::new(gens, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn word_to_string(&self, w: &[i32]) -> String {
        w.iter()
            .map(|&x| {
                let name = &self.generators[x.unsigned_abs() as usize - 1];
                if x < 0 { name.to_uppercase() } else { name.clone() }
            })
            .collect()
    }

    /// Substitutes `generator = replacement` (a word in the others) into
    /// every relator, drops the generator and renumbers the rest.
    fn substitute(&self, generator: usize, replacement: &[i32]) -> Presentation {
        let g = generator as i32 + 1;
        let renumber = |x: i32| {
            let a = x.abs();
            let b = if a > g { a - 1 } else { a };
            b * x.signum()
        };
        let relators = self
            .relators
            .iter()
            .map(|r| {
                let expanded: Word = r
                    .iter()
                    .flat_map(|&x| {
                        if x == g {
                            replacement.to_vec()
                        } else if x == -g {
                            invert_word(replacement)
                        } else {
                            vec![x]
                        }
                    })
                    .collect();
                cyclic_reduce(&expanded).into_iter().map(renumber).collect::<Word>()
            })
            .filter(|r: &Word| !r.is_empty())
            .collect();
        let mut generators = self.generators.clone();
        generators.remove(generator);
        Presentation { generators, relators }
    }

    /// Removes a generator using a relator in which it occurs exactly once:
    /// rotating that relator to `w·g^ε` gives `g = w^{-ε}`.
    pub fn eliminate(&self, generator: usize) -> Result<Presentation> {
        let g = generator as i32 + 1;
        let (n, relator) = self
            .relators
            .iter()
            .enumerate()
            .find(|(_, r)| r.iter().filter(|x| x.abs() == g).count() == 1)
            .ok_or_else(|| Error::Parse {
                what: "presentation",
                input: self.to_string(),
                reason: format!("no relator contains {} exactly once", self.generators[generator]),
            })?;
        let at = relator.iter().position(|x| x.abs() == g).unwrap();
        let rotated: Word = relator[at + 1..].iter().chain(&relator[..at]).copied().collect();
        // g^ε · rotated = 1, so g = rotated^{-1} when ε = 1 and g = rotated when ε = −1
        let replacement = if relator[at] > 0 { invert_word(&rotated) } else { rotated };
        let mut rest = self.clone();
        rest.relators.remove(n);
        Ok(rest.substitute(generator, &replacement))
    }
}

impl FromStr for Presentation {
    type Err = Error;

    /// Comma-separated relators; generators are the letters in order of
    /// first appearance. Uppercase or `^-1` marks an inverse, `^n` a power.
    fn from_str(s: &str) -> Result<Presentation> {
        let mut gens = Vec::new();
        let relators = parse_words(s, &mut gens, false)?;
        Presentation::new(gens, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(","), rels.join(", "))
    }
}

/// Sorted cyclic-canonical relators after renaming generator `g` to
/// `perm[g]` and inverting it when `flips` has bit `g` set.
fn relabelled_canon(p: &Presentation, perm: &[usize], flips: u32) -> Vec<Word> {
    let mut rels: Vec<Word> = p
        .relators
        .iter()
        .map(|r| {
            let mapped: Word = r
                .iter()
                .map(|&x| {
                    let g = x.unsigned_abs() as usize - 1;
                    let sign = if flips & (1 << g) != 0 { -x.signum() } else { x.signum() };
                    (perm[g] as i32 + 1) * sign
                })
                .collect();
            cyclic_canonical(&mapped)
        })
        .collect();
    rels.sort();
    rels
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Equal relator multisets after some renaming and inversion of
/// generators, with each relator taken up to rotation and inversion.
pub fn equivalent_up_to_symmetry(p: &Presentation, q: &Presentation) -> bool {
    let n = p.generator_count();
    if n != q.generator_count() || p.relators.len() != q.relators.len() || n > 8 {
        return false;
    }
    let target = relabelled_canon(q, &(0..n).collect::<Vec<_>>(), 0);
    permutations(n)
        .iter()
        .any(|perm| (0..1u32 << n).any(|flips| relabelled_canon(p, perm, flips) == target))
}

/// Equal relator multisets with generators fixed, each relator up to
/// rotation and inversion.
pub fn same_relators(p: &Presentation, q: &Presentation) -> bool {
    let id: Vec<usize> = (0..p.generator_count()).collect();
    p.generators == q.generators && relabelled_canon(p, &id, 0) == relabelled_canon(q, &id, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let p: Presentation = "abd,bcd,cad,cba".parse().unwrap();
        assert_eq!(p.generators, vec!["a", "b", "d", "c"]);
        assert_eq!(p.relators[0], vec![1, 2, 3]);
        let q = Presentation::parse_with_generators(&["a", "b", "c", "d"], "abd, bcd, cad, cba").unwrap();
        assert_eq!(q.relators[3], vec![3, 2, 1]);
        assert_eq!(q.to_string(), "<a,b,c,d | abd, bcd, cad, cba>");
        let inv = Presentation::parse_with_generators(&["a", "b"], "a^-1b,Ab").unwrap();
        assert_eq!(inv.relators[0], inv.relators[1]);
        let s: Presentation = "s^5".parse().unwrap();
        assert_eq!(s.relators, vec![vec![1; 5]]);
        assert!(Presentation::parse_with_generators(&["a"], "ab").is_err());
        assert!("a,,b".parse::<Presentation>().is_err());
        assert!("a1".parse::<Presentation>().is_err());
        assert!("a^x".parse::<Presentation>().is_err());
        assert!("a^0".parse::<Presentation>().is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(cyclic_canonical(&[3, 1, 2]), vec![-3, -2, -1]);
        assert_eq!(cyclic_canonical(&[2, 3, 1]), cyclic_canonical(&[-1, -3, -2]));
    }

    #[test]
    fn symmetry_matching() {
        let gens = ["a", "b", "c", "d"];
        let braid = Presentation::parse_with_generators(&gens, "abd,bcd,cad").unwrap();
        // rename a→c, b→a, c→b and invert d
        let relabelled = Presentation::parse_with_generators(&gens, "caD,abD,bcD").unwrap();
        assert!(equivalent_up_to_symmetry(&braid, &relabelled));
        let rotated = Presentation::parse_with_generators(&gens, "dab,dbc,DAC").unwrap();
        assert!(equivalent_up_to_symmetry(&braid, &rotated));
        let different = Presentation::parse_with_generators(&gens, "abd,abd,cad").unwrap();
        assert!(!equivalent_up_to_symmetry(&braid, &different));
        let four = Presentation::parse_with_generators(&gens, "abd,bcd,cad,cba").unwrap();
        assert!(!equivalent_up_to_symmetry(&braid, &four));
    }

    #[test]
    fn eliminating_d_gives_ab_bc_ca() {
        let gens = ["a", "b", "c", "d"];
        let p = Presentation::parse_with_generators(&gens, "abd,bcd,cad").unwrap();
        let reduced = p.eliminate(3).unwrap();
        assert_eq!(reduced.generators, vec!["a", "b", "c"]);
        // ab = bc and ab = ca
        let expected = Presentation::parse_with_generators(&["a", "b", "c"], "abCB,abAC").unwrap();
        assert!(same_relators(&reduced, &expected), "{reduced}");
        let no_d = Presentation::parse_with_generators(&["a", "b"], "abab").unwrap();
        assert!(no_d.eliminate(0).is_err());
    }
}
