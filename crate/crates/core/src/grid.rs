//! Dense indexing of the integer box `[0, corner]`.

use crate::monomial::Multidegree;

/// Mixed-radix indexing of `{a : 0 <= a <= corner}`. The first coordinate
/// is the most significant digit, so index order is lexicographic order.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    corner: Vec<u32>,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    pub fn new(corner: Vec<u32>) -> Self {
        let mut strides = vec![0; corner.len()];
        let mut len = 1usize;
        for j in (0..corner.len()).rev() {
            strides[j] = len;
            len = len.checked_mul(corner[j] as usize + 1).expect("grid too large");
        }
        Grid { corner, strides, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn corner(&self) -> &[u32] {
        &self.corner
    }

    pub fn index(&self, a: &[u32]) -> usize {
        a.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    pub fn point(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.corner.len()];
        for (j, &s) in self.strides.iter().enumerate() {
            out[j] = (idx / s) as u32;
            idx %= s;
        }
        out
    }

    pub fn multidegree(&self, idx: usize) -> Multidegree {
        Multidegree::new(self.point(idx))
    }

    /// Calls `f` with the index of every point `c` with `lo <= c <= hi`
    /// (clamped to the grid), in lexicographic order.
    pub fn for_each_in(&self, lo: &[u32], hi: &[u32], mut f: impl FnMut(usize)) {
        let d = self.corner.len();
        let hi: Vec<u32> = hi.iter().zip(&self.corner).map(|(&h, &c)| h.min(c)).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return;
        }
        let mut cur = lo.to_vec();
        let mut idx = self.index(&cur);
        loop {
            f(idx);
            let mut j = d;
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                if cur[j] < hi[j] {
                    cur[j] += 1;
                    idx += self.strides[j];
                    break;
                }
                idx -= (cur[j] - lo[j]) as usize * self.strides[j];
                cur[j] = lo[j];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let g = Grid::new(vec![2, 1, 3]);
        assert_eq!(g.len(), 24);
        for i in 0..g.len() {
            assert_eq!(g.index(&g.point(i)), i);
        }
        assert_eq!(g.point(1), vec![0, 0, 1]);
    }

    #[test]
    fn sub_box_enumeration() {
        let g = Grid::new(vec![2, 2]);
        let mut seen = Vec::new();
        g.for_each_in(&[1, 0], &[2, 1], |i| seen.push(g.point(i)));
        assert_eq!(seen, vec![vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]);
        let mut count = 0;
        g.for_each_in(&[0, 0], &[9, 9], |_| count += 1);
        assert_eq!(count, 9);
        g.for_each_in(&[2, 0], &[1, 1], |_| panic!("empty box"));
        let z = Grid::new(vec![]);
        let mut count = 0;
        z.for_each_in(&[], &[], |_| count += 1);
        assert_eq!(count, 1);
    }
}
