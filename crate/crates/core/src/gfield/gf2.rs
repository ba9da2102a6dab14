//! Bit matrices over GF(2), 64 columns per machine word. Rank, solving and
//! kernel extraction by Gaussian elimination; sized for the small systems of
//! the character algorithms (a handful of columns, up to a few hundred rows).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    /// Row-major, ceil(cols/64) words per row, bit j of word w = column 64w+j.
    data: Vec<Vec<u64>>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        GF2Matrix {
            rows,
            cols,
            data: vec![vec![0u64; words]; rows],
        }
    }

    /// Builds a matrix from row bit-slices given as bools.
    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = GF2Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &bit) in row.iter().enumerate() {
                m.set(i, j, bit);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        if bit {
            self.data[r][c / 64] |= 1 << (c % 64);
        } else {
            self.data[r][c / 64] &= !(1 << (c % 64));
        }
    }

    /// Appends a row of bools; the matrix must have matching width.
    pub fn push_row(&mut self, row: &[bool]) {
        assert_eq!(row.len(), self.cols);
        let words = self.cols.div_ceil(64);
        let mut packed = vec![0u64; words];
        for (j, &bit) in row.iter().enumerate() {
            if bit {
                packed[j / 64] |= 1 << (j % 64);
            }
        }
        self.data.push(packed);
        self.rows += 1;
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize(None).0
    }

    /// Solves A x = b, returning any solution, or None if inconsistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let (_, pivots) = m.echelonize(Some(&mut rhs));
        // Inconsistency: a zero row with nonzero rhs.
        for r in 0..m.rows {
            if rhs[r] && m.data[r].iter().all(|&w| w == 0) {
                return None;
            }
        }
        let mut x = vec![false; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rhs[r];
        }
        Some(x)
    }

    /// A basis of the right kernel, one vector per free column in ascending
    /// column order (deterministic).
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let (_, pivots) = m.echelonize(None);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![false; self.cols];
            v[free] = true;
            // Back-substitute: pivot variable of row r equals the sum over
            // free columns set in that row.
            for (r, &pc) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form in place; returns (rank, pivot columns).
    /// The optional rhs is transformed alongside.
    fn echelonize(&mut self, mut rhs: Option<&mut Vec<bool>>) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.data.swap(row, pivot);
            if let Some(b) = rhs.as_deref_mut() {
                b.swap(row, pivot);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    let (src, dst) = if r < row {
                        let (a, b) = self.data.split_at_mut(row);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = self.data.split_at_mut(r);
                        (&a[row], &mut b[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                    if let Some(b) = rhs.as_deref_mut() {
                        let v = b[row];
                        b[r] ^= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (row, pivots)
    }

    /// A·x over GF(2).
    pub fn apply(&self, x: &[bool]) -> Vec<bool> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = false;
                for (c, &bit) in x.iter().enumerate() {
                    if bit && self.get(r, c) {
                        acc = !acc;
                    }
                }
                acc
            })
            .collect()
    }
}
