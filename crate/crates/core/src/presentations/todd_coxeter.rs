//! Coset enumeration over the trivial subgroup, Felsch style: a new coset
//! is defined only after all consequences of the previous one have been
//! deduced, so the table never holds more cosets than it needs to.
//!
//! `Exceeded` only means the cap was reached; it does not prove the group
//! is infinite.

use serde::Serialize;

use super::words::Presentation;

const NONE: usize = usize::MAX;

/// A closed coset table: `table[c][2g]` is `c·g`, `table[c][2g+1]` is `c·g⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Column of a signed generator letter.
    pub fn column(letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 { 2 * g } else { 2 * g + 1 }
    }

    pub fn act(&self, coset: usize, word: &[i32]) -> usize {
        word.iter().fold(coset, |c, &x| self.table[c][CosetTable::column(x)])
    }

    /// Every generator acts as a permutation with the inverse column as its
    /// inverse, and every relator fixes every coset.
    pub fn is_valid_for(&self, p: &Presentation) -> bool {
        let n = self.order();
        let perms_ok = (0..2 * p.generator_count()).all(|col| {
            let mut seen = vec![false; n];
            (0..n).all(|c| {
                let d = self.table[c][col];
                let ok = d < n && !seen[d] && self.table[d][col ^ 1] == c;
                if d < n {
                    seen[d] = true;
                }
                ok
            })
        });
        perms_ok && (0..n).all(|c| p.relators.iter().all(|r| self.act(c, r) == c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TcOutcome {
    Finite(CosetTable),
    Exceeded { cosets_defined: usize },
}

impl TcOutcome {
    pub fn order(&self) -> Option<usize> {
        match self {
            TcOutcome::Finite(t) => Some(t.order()),
            TcOutcome::Exceeded { .. } => None,
        }
    }
}

struct Enumerator {
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cols: usize,
    /// Cyclic conjugates of the relators and their inverses, by first column.
    by_first: Vec<Vec<Vec<usize>>>,
    relators: Vec<Vec<usize>>,
    deductions: Vec<(usize, usize)>,
}

impl Enumerator {
    fn new(p: &Presentation) -> Enumerator {
        let cols = 2 * p.generator_count();
        let relators: Vec<Vec<usize>> =
            p.relators.iter().map(|r| r.iter().map(|&x| CosetTable::column(x)).collect()).collect();
        let mut by_first = vec![Vec::new(); cols];
        for r in &relators {
            let inverse: Vec<usize> = r.iter().rev().map(|&c| c ^ 1).collect();
            for word in [r, &inverse] {
                for k in 0..word.len() {
                    let rotated: Vec<usize> = word[k..].iter().chain(&word[..k]).copied().collect();
                    if !by_first[rotated[0]].contains(&rotated) {
                        by_first[rotated[0]].push(rotated);
                    }
                }
            }
        }
        Enumerator {
            rows: vec![vec![NONE; cols]],
            parent: vec![0],
            cols,
            by_first,
            relators,
            deductions: Vec::new(),
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            let up = self.parent[self.parent[c]];
            self.parent[c] = up;
            c = up;
        }
        c
    }

    fn define(&mut self, c: usize, col: usize) {
        let n = self.rows.len();
        self.rows.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.rows[c][col] = n;
        self.rows[n][col ^ 1] = c;
        self.deductions.push((c, col));
    }

    /// Scans `word` at coset `c` from both ends; closes a single gap by a
    /// deduction, or identifies cosets when both ends meet inconsistently.
    fn scan(&mut self, c: usize, word: &[usize]) {
        let mut f = c;
        let mut i = 0usize;
        let mut j = word.len();
        while i < j && self.rows[f][word[i]] != NONE {
            f = self.rows[f][word[i]];
            i += 1;
        }
        if i == j {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        while j > i && self.rows[b][word[j - 1] ^ 1] != NONE {
            b = self.rows[b][word[j - 1] ^ 1];
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            let x = word[i];
            self.rows[f][x] = b;
            self.rows[b][x ^ 1] = f;
            self.deductions.push((f, x));
        }
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for x in 0..self.cols {
                let f = self.rows[e][x];
                if f == NONE {
                    continue;
                }
                if self.rows[f][x ^ 1] == e {
                    self.rows[f][x ^ 1] = NONE;
                }
                let e1 = self.find(e);
                let f1 = self.find(f);
                if self.rows[e1][x] != NONE {
                    let g = self.rows[e1][x];
                    self.merge(f1, g, &mut queue);
                } else if self.rows[f1][x ^ 1] != NONE {
                    let g = self.rows[f1][x ^ 1];
                    self.merge(e1, g, &mut queue);
                } else {
                    self.rows[e1][x] = f1;
                    self.rows[f1][x ^ 1] = e1;
                    self.deductions.push((e1, x));
                }
            }
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.live(c) {
                continue;
            }
            for w in self.by_first[x].clone() {
                self.scan(c, &w);
                if !self.live(c) {
                    break;
                }
            }
            if !self.live(c) {
                continue;
            }
            let d = self.rows[c][x];
            if d != NONE && self.live(d) {
                for w in self.by_first[x ^ 1].clone() {
                    self.scan(d, &w);
                    if !self.live(d) {
                        break;
                    }
                }
            }
        }
    }

    fn first_gap(&self, from: usize) -> Option<(usize, usize)> {
        (from..self.rows.len())
            .filter(|&c| self.live(c))
            .find_map(|c| (0..self.cols).find(|&x| self.rows[c][x] == NONE).map(|x| (c, x)))
    }

    /// Full relator scan at every live coset; true if anything changed.
    fn rescan(&mut self) -> bool {
        let before: Vec<Vec<usize>> = self.rows.clone();
        let live_before = self.parent.iter().enumerate().filter(|(c, p)| c == *p).count();
        for c in 0..self.rows.len() {
            for r in self.relators.clone() {
                if self.live(c) {
                    self.scan(c, &r);
                }
            }
            self.process_deductions();
        }
        let live_after = self.parent.iter().enumerate().filter(|(c, p)| c == *p).count();
        live_before != live_after || before != self.rows
    }

    fn compact(&self) -> CosetTable {
        let live: Vec<usize> = (0..self.rows.len()).filter(|&c| self.live(c)).collect();
        let mut renumber = vec![NONE; self.rows.len()];
        for (n, &c) in live.iter().enumerate() {
            renumber[c] = n;
        }
        let table = live
            .iter()
            .map(|&c| self.rows[c].iter().map(|&d| renumber[d]).collect())
            .collect();
        CosetTable { table }
    }
}

/// Enumerates the cosets of the trivial subgroup, defining at most
/// `max_cosets` cosets in total.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> TcOutcome {
    if p.generator_count() == 0 {
        return TcOutcome::Finite(CosetTable { table: vec![Vec::new()] });
    }
    let mut e = Enumerator::new(p);
    // relators at the first coset may already force deductions
    for r in e.relators.clone() {
        e.scan(0, &r);
    }
    let mut cursor = 0;
    loop {
        e.process_deductions();
        let gap = e.first_gap(cursor).or_else(|| e.first_gap(0));
        match gap {
            Some((c, x)) => {
                if e.rows.len() >= max_cosets {
                    return TcOutcome::Exceeded { cosets_defined: e.rows.len() };
                }
                cursor = c;
                e.define(c, x);
            }
            None => {
                if !e.rescan() {
                    break;
                }
            }
        }
    }
    TcOutcome::Finite(e.compact())
}
