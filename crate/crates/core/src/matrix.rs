//! Dense row-major matrices and the shared text formats.
//!
//! Matrix files start with `semiring <name>`, then `rows cols`, then the
//! entries row by row. Vector files replace `rows cols` by a single length.
//! Tokens are separated by whitespace and `#` starts a comment.

use std::fmt::{self, Display};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::MaxPlus;
use crate::semiring::{dot, Semiring, Symmetric};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Row `r` of the result is row `source[r]` of `self`.
    pub fn rows_from(&self, source: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(source, &cols)
    }

    pub fn without_column(&self, k: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != k).collect();
        self.select(&rows, &cols)
    }

    /// The submatrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select(&rows, &cols)
    }

    pub fn with_column(&self, k: usize, column: &[T]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            if j == k {
                column[i].clone()
            } else {
                self.get(i, j).clone()
            }
        })
    }
}

impl<T: Semiring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![T::one(); n])
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    /// The permutation matrix `P` with `(P x)_r = x_{source[r]}`.
    pub fn permutation(source: &[usize]) -> Self {
        let n = source.len();
        Matrix::from_fn(
            n,
            n,
            |i, j| if source[i] == j { T::one() } else { T::zero() },
        )
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rt = rhs.transpose();
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            dot(self.row(i), rt.row(j))
        }))
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if self.cols != x.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by a vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension(
                "sum of differently shaped matrices".into(),
            ));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).add(rhs.get(i, j))
        }))
    }
}

impl<T: Symmetric> Matrix<T> {
    pub fn modulus(&self) -> Matrix<MaxPlus> {
        self.map(T::modulus)
    }
}

/// Entrywise balance of two vectors.
pub fn balances<T: Symmetric>(x: &[T], y: &[T]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a.balance(b))
}

pub fn is_thin_vector<T: Symmetric>(x: &[T]) -> bool {
    x.iter().all(T::is_thin)
}

pub fn modulus_vector<T: Symmetric>(x: &[T]) -> Vec<MaxPlus> {
    x.iter().map(T::modulus).collect()
}

impl<T: Display> Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A whitespace token with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (l, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut start = None;
        for (c, ch) in content
            .char_indices()
            .chain(std::iter::once((content.len(), ' ')))
        {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(c),
                (true, Some(s)) => {
                    out.push(Token {
                        text: &content[s..c],
                        line: l + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
    }
    out
}

fn parse_error(tok: Option<&Token<'_>>, message: String) -> Error {
    match tok {
        Some(t) => Error::Parse {
            line: t.line,
            column: t.column,
            message,
        },
        None => Error::Parse {
            line: 0,
            column: 0,
            message: format!("unexpected end of input: {message}"),
        },
    }
}

fn count(tok: Option<&Token<'_>>, what: &str) -> Result<usize> {
    let t = tok.ok_or_else(|| parse_error(None, format!("missing {what}")))?;
    t.text
        .parse()
        .map_err(|_| parse_error(Some(t), format!("expected {what}, found `{}`", t.text)))
}

/// The semiring name declared by a matrix or vector file.
pub fn declared_semiring(text: &str) -> Result<String> {
    let toks = tokenize(text);
    match (toks.first(), toks.get(1)) {
        (Some(k), Some(name)) if k.text == "semiring" => Ok(name.text.to_string()),
        (t, _) => Err(parse_error(t, "expected `semiring <name>` header".into())),
    }
}

fn parse_entries<T: FromStr<Err = String>>(toks: &[Token<'_>], want: usize) -> Result<Vec<T>> {
    if toks.len() < want {
        return Err(parse_error(
            None,
            format!("expected {want} entries, found {}", toks.len()),
        ));
    }
    if toks.len() > want {
        return Err(parse_error(Some(&toks[want]), "trailing token".into()));
    }
    toks.iter()
        .map(|t| t.text.parse::<T>().map_err(|e| parse_error(Some(t), e)))
        .collect()
}

pub fn parse_matrix<T: FromStr<Err = String> + Clone>(text: &str) -> Result<(String, Matrix<T>)> {
    let name = declared_semiring(text)?;
    let toks = tokenize(text);
    let rows = count(toks.get(2), "row count")?;
    let cols = count(toks.get(3), "column count")?;
    let data = parse_entries(toks.get(4..).unwrap_or(&[]), rows * cols)?;
    Ok((name, Matrix::new(rows, cols, data)?))
}

pub fn parse_vector<T: FromStr<Err = String>>(text: &str) -> Result<(String, Vec<T>)> {
    let name = declared_semiring(text)?;
    let toks = tokenize(text);
    let len = count(toks.get(2), "vector length")?;
    let data = parse_entries(toks.get(3..).unwrap_or(&[]), len)?;
    Ok((name, data))
}

pub fn format_matrix<T: Display>(semiring: &str, m: &Matrix<T>) -> String {
    format!("semiring {semiring}\n{} {}\n{m}", m.rows, m.cols)
}

pub fn format_vector<T: Display>(semiring: &str, x: &[T]) -> String {
    let body: Vec<String> = x.iter().map(T::to_string).collect();
    format!("semiring {semiring}\n{}\n{}\n", x.len(), body.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::SMax;

    #[test]
    fn parse_reports_positions() {
        let text = "semiring smax\n2 2\np(0) n(1)\n# note\np(2) q(3)\n";
        match parse_matrix::<SMax>(text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (5, 6)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn matrix_round_trip() {
        let text = "semiring smax\n2 2\np(0) n(1) # first row\nb(2) z\n";
        let (name, m) = parse_matrix::<SMax>(text).unwrap();
        assert_eq!(name, "smax");
        let printed = format_matrix(&name, &m);
        assert_eq!(parse_matrix::<SMax>(&printed).unwrap().1, m);
    }

    #[test]
    fn identity_is_neutral() {
        let a = Matrix::from_rows(vec![
            vec![SMax::plus(1), SMax::minus(2)],
            vec![SMax::Zero, SMax::balanced(0)],
        ])
        .unwrap();
        assert_eq!(Matrix::identity(2).mul(&a).unwrap(), a);
        assert_eq!(
            a.mul_vec(&[SMax::Zero, SMax::Zero]).unwrap(),
            vec![SMax::Zero; 2]
        );
    }
}
