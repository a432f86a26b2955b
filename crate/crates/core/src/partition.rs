//! Vertex partitions produced by contraction.

#[derive(Clone, Debug)]
pub struct ContractionPartition {
    parent: Vec<usize>,
    size: Vec<usize>,
    blocks: usize,
}

impl ContractionPartition {
    pub fn identity(n: usize) -> Self {
        ContractionPartition { parent: (0..n).collect(), size: vec![1; n], blocks: n }
    }

    /// Partition with the given block label per vertex.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut p = Self::identity(labels.len());
        let mut first = std::collections::HashMap::new();
        for (v, &l) in labels.iter().enumerate() {
            match first.get(&l) {
                Some(&u) => {
                    p.union(u, v);
                }
                None => {
                    first.insert(l, v);
                }
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Merges the blocks of `a` and `b`; returns false if already together.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.blocks -= 1;
        // Keep chains short without needing `&mut` in `find`.
        let n = self.parent.len();
        if n > 0 && self.blocks % 64 == 0 {
            for v in 0..n {
                let r = self.find(v);
                self.parent[v] = r;
            }
        }
        true
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// Block index per vertex; blocks are numbered by their smallest vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for v in 0..n {
            let r = self.find(v);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[v] = id[r];
        }
        out
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let of = self.block_of();
        let mut out = vec![Vec::new(); self.blocks];
        for (v, &b) in of.iter().enumerate() {
            out[b].push(v);
        }
        out
    }

    /// Merges every block of `other` (a partition of the same vertices) into this one.
    pub fn merge_from(&mut self, other: &ContractionPartition) {
        for v in 0..other.n() {
            let r = other.find(v);
            if r != v {
                self.union(r, v);
            }
        }
    }

    /// Lifts a partition of this partition's blocks back to vertices.
    pub fn refine_by_blocks(&self, of_blocks: &ContractionPartition) -> ContractionPartition {
        let block = self.block_of();
        let labels: Vec<usize> = block.iter().map(|&b| of_blocks.find(b)).collect();
        ContractionPartition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_follow_unions() {
        let mut p = ContractionPartition::identity(5);
        p.union(3, 1);
        p.union(4, 0);
        assert_eq!(p.block_count(), 3);
        assert_eq!(p.blocks(), vec![vec![0, 4], vec![1, 3], vec![2]]);
        assert!(!p.union(0, 4));
    }

    #[test]
    fn refine_lifts_block_partition() {
        let mut p = ContractionPartition::identity(4);
        p.union(0, 1);
        let mut q = ContractionPartition::identity(3);
        q.union(0, 2);
        let lifted = p.refine_by_blocks(&q);
        assert_eq!(lifted.blocks(), vec![vec![0, 1, 3], vec![2]]);
    }
}
