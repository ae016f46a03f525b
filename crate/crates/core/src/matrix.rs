//! 0-1 matrices in bottom-up / right-to-left coordinates.
//!
//! Rows are numbered `1..=n` from the bottom and columns `1..=k` from the
//! right. Everything in the crate talks in these coordinates; the only place
//! where the visual layout appears is the text format handled by
//! [`BinaryMatrix::parse`] and [`BinaryMatrix::render`], where the first line
//! is the top row and the first character is the left column.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A cell position, 1-based, row counted from the bottom and column from the right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub row: usize,
    pub col: usize,
}

impl Pos {
    pub const fn new(row: usize, col: usize) -> Self {
        Pos { row, col }
    }
}

impl fmt::Debug for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An `n x k` 0-1 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    k: usize,
    // row-major in bottom-up, right-to-left coordinates: index (row - 1) * k + (col - 1)
    cells: Vec<bool>,
}

/// The statistics tracked by the Γ-free generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixStats {
    pub rows: usize,
    pub cols: usize,
    pub empty_rows: usize,
    pub empty_cols: usize,
    /// Rows holding at least one top-1 (the highest 1 of some column).
    pub top_rows: usize,
}

impl BinaryMatrix {
    pub fn zeros(n: usize, k: usize) -> Self {
        BinaryMatrix {
            n,
            k,
            cells: vec![false; n * k],
        }
    }

    pub fn from_ones<I>(n: usize, k: usize, ones: I) -> Result<Self>
    where
        I: IntoIterator<Item = Pos>,
    {
        let mut m = BinaryMatrix::zeros(n, k);
        for p in ones {
            if p.row == 0 || p.row > n || p.col == 0 || p.col > k {
                return Err(Error::OutOfBounds {
                    row: p.row,
                    col: p.col,
                    n,
                    k,
                });
            }
            m.set(p, true);
        }
        Ok(m)
    }

    /// Builds a matrix from rows given top to bottom, each left to right.
    pub fn from_visual_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        let mut m = BinaryMatrix::zeros(n, k);
        for (line, visual) in rows.iter().enumerate() {
            if visual.len() != k {
                return Err(Error::RaggedRow {
                    line: line + 1,
                    expected: k,
                    found: visual.len(),
                });
            }
            for (j, &bit) in visual.iter().enumerate() {
                m.set(Pos::new(n - line, k - j), bit);
            }
        }
        Ok(m)
    }

    /// Parses the text format: one line per row, top row first, `'0'`/`'1'` cells
    /// with the leftmost character being the leftmost column.
    ///
    /// A trailing newline is optional. The empty string is the `0 x 0` matrix.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let mut row = Vec::with_capacity(line.len());
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => row.push(false),
                    '1' => row.push(true),
                    _ => {
                        return Err(Error::IllegalCharacter {
                            line: i + 1,
                            column: j + 1,
                            ch,
                        })
                    }
                }
            }
            rows.push(row);
        }
        BinaryMatrix::from_visual_rows(&rows)
    }

    /// Renders the text format, every row terminated by `'\n'`.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.k + 1));
        for row in (1..=self.n).rev() {
            for col in (1..=self.k).rev() {
                out.push(if self.get(row, col) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.k
    }

    #[inline]
    fn index(&self, row: usize, col: usize) -> usize {
        debug_assert!(row >= 1 && row <= self.n && col >= 1 && col <= self.k);
        (row - 1) * self.k + (col - 1)
    }

    /// Cell at position `(row, col)`. Panics when out of bounds.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(
            row >= 1 && row <= self.n && col >= 1 && col <= self.k,
            "({row},{col}) outside {}x{}",
            self.n,
            self.k
        );
        self.cells[self.index(row, col)]
    }

    #[inline]
    pub fn is_one(&self, p: Pos) -> bool {
        self.get(p.row, p.col)
    }

    pub(crate) fn set(&mut self, p: Pos, value: bool) {
        let i = self.index(p.row, p.col);
        self.cells[i] = value;
    }

    /// All 1's in increasing `(row, col)` order.
    pub fn ones(&self) -> impl Iterator<Item = Pos> + '_ {
        (1..=self.n).flat_map(move |row| self.row_ones(row).map(move |col| Pos::new(row, col)))
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    /// Columns holding a 1 in `row`, increasing (i.e. right to left visually).
    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let start = (row - 1) * self.k;
        self.cells[start..start + self.k]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| j + 1)
    }

    /// Rows holding a 1 in `col`, increasing (bottom to top).
    pub fn col_ones(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&row| self.get(row, col))
    }

    pub fn is_row_empty(&self, row: usize) -> bool {
        self.row_ones(row).next().is_none()
    }

    pub fn is_col_empty(&self, col: usize) -> bool {
        self.col_ones(col).next().is_none()
    }

    /// Column of the rightmost 1 in `row`, which is the smallest column index.
    pub fn rightmost_one(&self, row: usize) -> Option<usize> {
        self.row_ones(row).next()
    }

    /// Column of the leftmost 1 in `row`; under right-to-left column numbering
    /// this is the largest column index.
    pub fn leftmost_one(&self, row: usize) -> Option<usize> {
        self.row_ones(row).last()
    }

    /// Row of the highest 1 in `col`.
    pub fn highest_one(&self, col: usize) -> Option<usize> {
        (1..=self.n).rev().find(|&row| self.get(row, col))
    }

    pub fn has_empty_line(&self) -> bool {
        (1..=self.n).any(|r| self.is_row_empty(r)) || (1..=self.k).any(|c| self.is_col_empty(c))
    }

    pub fn stats(&self) -> MatrixStats {
        let empty_rows = (1..=self.n).filter(|&r| self.is_row_empty(r)).count();
        let empty_cols = (1..=self.k).filter(|&c| self.is_col_empty(c)).count();
        let mut top = vec![false; self.n + 1];
        for col in 1..=self.k {
            if let Some(row) = self.highest_one(col) {
                top[row] = true;
            }
        }
        MatrixStats {
            rows: self.n,
            cols: self.k,
            empty_rows,
            empty_cols,
            top_rows: top.iter().filter(|&&t| t).count(),
        }
    }

    /// Cells in visual reading order: top row first, left to right.
    pub fn raster(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.n)
            .rev()
            .flat_map(move |row| (1..=self.k).rev().map(move |col| self.get(row, col)))
    }
}

impl Ord for BinaryMatrix {
    /// Shape first, then the rendered text.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.k)
            .cmp(&(other.n, other.k))
            .then_with(|| self.raster().cmp(other.raster()))
    }
}

impl PartialOrd for BinaryMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} {:?}", self.n, self.k, self.render())
    }
}
