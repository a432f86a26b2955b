//! Minimum of a monotone matrix in `r` rounds of entry reads.
//!
//! A matrix is monotone when the rows attaining the column minima move down
//! (weakly) from left to right: for columns `j < i`, the last argmin row of
//! `j` is at most the first argmin row of `i`. Each round reads `f` boundary
//! columns of every open block, `f^r >= columns`, and the stretches between
//! them become the blocks of the next round, restricted to the rows between
//! the neighboring boundary argmins.

use rand::Rng;

/// Reads per round, mirroring the cut-query ledger.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReadLedger {
    pub rounds: usize,
    pub reads: usize,
    pub per_round: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColumnMin {
    pub col: usize,
    pub value: u64,
    /// First and last row attaining the minimum.
    pub first: usize,
    pub last: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonotoneResult {
    pub value: u64,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug)]
struct Block {
    rows: (usize, usize),
    cols: (usize, usize),
}

/// Smallest `f` with `f^r >= cols`.
pub fn branching(cols: usize, r: usize) -> usize {
    let r = r.max(1) as u32;
    let mut f = (cols.max(1) as f64).powf(1.0 / r as f64).floor().max(1.0) as usize;
    while (f as u128).pow(r) < cols as u128 {
        f += 1;
    }
    f
}

/// Interactive solver: ask for `pending()`, answer with `feed` in the same
/// order, repeat until `done()`.
pub struct MonotoneSearch {
    f: usize,
    open: Vec<Block>,
    /// Per open block: boundary columns and the rows they are scanned over.
    plan: Vec<(Block, Vec<usize>)>,
    reads: Vec<(usize, usize)>,
    best: Option<MonotoneResult>,
    ledger: ReadLedger,
}

impl MonotoneSearch {
    pub fn new(rows: usize, cols: usize, r: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut s = MonotoneSearch {
            f: branching(cols, r),
            open: vec![Block { rows: (0, rows - 1), cols: (0, cols - 1) }],
            plan: Vec::new(),
            reads: Vec::new(),
            best: None,
            ledger: ReadLedger::default(),
        };
        s.prepare();
        s
    }

    fn boundaries(&self, b: Block) -> Vec<usize> {
        let w = b.cols.1 - b.cols.0 + 1;
        let mut out: Vec<usize> = (1..=self.f).map(|k| b.cols.0 + (k * w).div_ceil(self.f) - 1).collect();
        out.dedup();
        out
    }

    fn prepare(&mut self) {
        self.plan.clear();
        self.reads.clear();
        for b in std::mem::take(&mut self.open) {
            let cols = self.boundaries(b);
            for &c in &cols {
                self.reads.extend((b.rows.0..=b.rows.1).map(|i| (i, c)));
            }
            self.plan.push((b, cols));
        }
    }

    /// Entries to read this round, as `(row, col)`.
    pub fn pending(&self) -> &[(usize, usize)] {
        &self.reads
    }

    pub fn done(&self) -> bool {
        self.reads.is_empty()
    }

    pub fn feed(&mut self, values: &[u64]) {
        assert_eq!(values.len(), self.reads.len(), "one value per pending read");
        self.ledger.rounds += 1;
        self.ledger.reads += values.len();
        self.ledger.per_round.push(values.len());
        let mut at = 0;
        let mut next = Vec::new();
        for (b, cols) in std::mem::take(&mut self.plan) {
            let height = b.rows.1 - b.rows.0 + 1;
            let mut mins = Vec::with_capacity(cols.len());
            for &c in &cols {
                let m = column_min(c, b.rows.0, &values[at..at + height]);
                at += height;
                if self.best.map_or(true, |x| m.value < x.value) {
                    self.best = Some(MonotoneResult { value: m.value, row: m.first, col: c });
                }
                mins.push(m);
            }
            let mut left_col = b.cols.0;
            let mut top = b.rows.0;
            for m in mins {
                if m.col > left_col {
                    let (lo, hi) = (top.min(m.first), top.max(m.first));
                    next.push(Block { rows: (lo, hi), cols: (left_col, m.col - 1) });
                }
                left_col = m.col + 1;
                top = m.last;
            }
        }
        self.open = next;
        self.prepare();
    }

    pub fn result(&self) -> MonotoneResult {
        assert!(self.done(), "search not finished");
        self.best.expect("nonempty matrix")
    }

    pub fn ledger(&self) -> &ReadLedger {
        &self.ledger
    }
}

fn column_min(col: usize, row0: usize, values: &[u64]) -> ColumnMin {
    let value = *values.iter().min().expect("nonempty column");
    let first = row0 + values.iter().position(|&v| v == value).unwrap();
    let last = row0 + values.iter().rposition(|&v| v == value).unwrap();
    ColumnMin { col, value, first, last }
}

/// Runs the search against an entry accessor.
pub fn solve_monotone(rows: usize, cols: usize, r: usize, mut entry: impl FnMut(usize, usize) -> u64) -> (MonotoneResult, ReadLedger) {
    let mut s = MonotoneSearch::new(rows, cols, r);
    while !s.done() {
        let values: Vec<u64> = s.pending().iter().map(|&(i, j)| entry(i, j)).collect();
        s.feed(&values);
    }
    (s.result(), s.ledger.clone())
}

pub fn column_mins(m: &[Vec<u64>]) -> Vec<ColumnMin> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            let column: Vec<u64> = m.iter().map(|row| row[j]).collect();
            column_min(j, 0, &column)
        })
        .collect()
}

pub fn check_monotone(m: &[Vec<u64>]) -> bool {
    column_mins(m).windows(2).all(|w| w[0].last <= w[1].first)
}

pub fn brute_force_min(m: &[Vec<u64>]) -> MonotoneResult {
    let mut best: Option<MonotoneResult> = None;
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if best.map_or(true, |b| v < b.value) {
                best = Some(MonotoneResult { value: v, row: i, col: j });
            }
        }
    }
    best.expect("nonempty matrix")
}

/// Random monotone matrix: a weakly descending staircase of argmin row
/// ranges, ties included, with every other entry strictly above its
/// column minimum.
pub fn random_monotone(rows: usize, cols: usize, rng: &mut impl Rng) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0u64; cols]; rows];
    let mut top = 0;
    for j in 0..cols {
        let first = rng.gen_range(top..rows);
        let last = if rng.gen_bool(0.2) { rng.gen_range(first..rows) } else { first };
        top = last;
        let floor = rng.gen_range(0..50u64);
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = if (first..=last).contains(&i) { floor } else { floor + 1 + rng.gen_range(0..100u64) };
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;

    fn solve(m: &[Vec<u64>], r: usize) -> (MonotoneResult, ReadLedger) {
        solve_monotone(m.len(), m[0].len(), r, |i, j| m[i][j])
    }

    #[test]
    fn one_by_one() {
        let (res, led) = solve(&[vec![5]], 1);
        assert_eq!(res, MonotoneResult { value: 5, row: 0, col: 0 });
        assert_eq!((led.rounds, led.reads), (1, 1));
    }

    #[test]
    fn small_examples() {
        let m = vec![vec![1, 5, 7], vec![2, 3, 6], vec![4, 4, 2]];
        assert!(check_monotone(&m));
        for r in 1..=3 {
            let (res, _) = solve(&m, r);
            assert_eq!((res.value, res.row, res.col), (1, 0, 0));
        }
        assert!(check_monotone(&[vec![0, 1], vec![1, 0]]));
        assert!(check_monotone(&[vec![0, 1], vec![2, 0], vec![1, 3]]));
        assert!(!check_monotone(&[vec![1, 0], vec![0, 1]]));
    }

    #[test]
    fn constant_matrix() {
        let m = vec![vec![7; 9]; 9];
        let (res, led) = solve(&m, 2);
        assert_eq!(res.value, 7);
        assert!(led.rounds <= 2);
    }

    #[test]
    fn branching_factor() {
        assert_eq!(branching(64, 2), 8);
        assert_eq!(branching(65, 2), 9);
        assert_eq!(branching(64, 3), 4);
        assert_eq!(branching(1, 3), 1);
        assert_eq!(branching(10, 1), 10);
    }

    #[test]
    fn random_instances_exact() {
        let mut rng = Seed::new(17).rng();
        for _ in 0..300 {
            let a = rng.gen_range(1..=40);
            let m = random_monotone(a, a, &mut rng);
            assert!(check_monotone(&m));
            for r in 1..=3 {
                let (res, led) = solve(&m, r);
                assert_eq!(res.value, brute_force_min(&m).value);
                assert_eq!(m[res.row][res.col], res.value);
                assert!(led.rounds <= r);
                assert!(led.reads as f64 <= 8.0 * r as f64 * (a as f64).powf(1.0 + 1.0 / r as f64));
            }
        }
    }
}
