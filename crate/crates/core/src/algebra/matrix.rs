use std::fmt;

use crate::error::{Error, Result};

/// Index of the dummy method on both axes of every matrix and vector.
pub const DUMMY: usize = 0;

/// Dense row-major storage shared by the dependency and conversion matrices.
#[derive(Clone, PartialEq)]
struct Grid<T> {
    rows: usize,
    cols: usize,
    cells: Vec<T>,
}

impl<T: Copy> Grid<T> {
    fn filled(rows: usize, cols: usize, value: T) -> Self {
        Grid {
            rows,
            cols,
            cells: vec![value; rows * cols],
        }
    }

    fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != cols {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: cols,
                    found: values.len(),
                });
            }
            cells.extend_from_slice(values);
        }
        Ok(Grid {
            rows: rows.len(),
            cols,
            cells,
        })
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> T {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        self.cells[row * self.cols + col]
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize, value: T) {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        self.cells[row * self.cols + col] = value;
    }

    fn row(&self, row: usize) -> &[T] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }
}

/// Boolean matrix `a[j][i]`: target method `j` requires source method `i`.
///
/// Rows index target-interface methods and columns index source-interface
/// methods, both with the dummy at index 0. Construction only checks that the
/// matrix is rectangular and non-empty; the dummy-row rule is reported by
/// [`validate_factor`](super::validate_factor).
#[derive(Clone, PartialEq)]
pub struct MethodDependencyMatrix(Grid<bool>);

impl MethodDependencyMatrix {
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<Self> {
        Grid::from_rows(rows).map(Self)
    }

    /// A matrix whose only true cell is the dummy-to-dummy one: every real
    /// target method is marked as always implementable.
    pub fn with_dummy(rows: usize, cols: usize) -> Self {
        assert!(
            rows >= 1 && cols >= 1,
            "matrix needs the dummy row and column"
        );
        let mut grid = Grid::filled(rows, cols, false);
        grid.set(DUMMY, DUMMY, true);
        Self(grid)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "matrix needs the dummy row and column");
        let mut grid = Grid::filled(n, n, false);
        for k in 0..n {
            grid.set(k, k, true);
        }
        Self(grid)
    }

    pub fn rows(&self) -> usize {
        self.0.rows
    }

    pub fn cols(&self) -> usize {
        self.0.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.0.rows, self.0.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.0.get(row, col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.0.set(row, col, value);
    }

    pub fn row(&self, row: usize) -> &[bool] {
        self.0.row(row)
    }

    /// Source columns that row `row` depends on, in increasing order.
    pub fn support(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(row)
            .iter()
            .enumerate()
            .filter_map(|(i, &dep)| dep.then_some(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.rows()).map(|j| self.row(j).to_vec()).collect()
    }
}

impl fmt::Debug for MethodDependencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for j in 0..self.rows() {
            if j > 0 {
                f.write_str(", ")?;
            }
            let row: String = self
                .row(j)
                .iter()
                .map(|&b| if b { 't' } else { '.' })
                .collect();
            f.write_str(&row)?;
        }
        f.write_str("]")
    }
}

/// Real matrix `t[j][i]`: probability that the adapter converts an argument
/// of target method `j` into one for source method `i` (and the result back).
#[derive(Clone, PartialEq)]
pub struct ConversionProbabilityMatrix(Grid<f64>);

impl ConversionProbabilityMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(
            rows >= 1 && cols >= 1,
            "matrix needs the dummy row and column"
        );
        Self(Grid::filled(rows, cols, 0.0))
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Grid::from_rows(rows).map(Self)
    }

    pub fn rows(&self) -> usize {
        self.0.rows
    }

    pub fn cols(&self) -> usize {
        self.0.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.0.rows, self.0.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0.get(row, col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.0.set(row, col, value);
    }

    pub fn row(&self, row: usize) -> &[f64] {
        self.0.row(row)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows()).map(|j| self.row(j).to_vec()).collect()
    }
}

impl fmt::Debug for ConversionProbabilityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows()).map(|j| self.row(j)))
            .finish()
    }
}
