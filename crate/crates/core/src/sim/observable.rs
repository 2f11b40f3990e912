//! Weighted sums of Pauli strings.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{SimError, StateVector};
use crate::gate::Matrix;

/// A Pauli string stored as X and Z bit masks (Y sets both).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn single(q: usize, p: char) -> Result<Self, SimError> {
        let b = 1u64 << q;
        match p.to_ascii_uppercase() {
            'I' => Ok(PauliString::IDENTITY),
            'X' => Ok(PauliString { x: b, z: 0 }),
            'Y' => Ok(PauliString { x: b, z: b }),
            'Z' => Ok(PauliString { x: 0, z: b }),
            other => Err(SimError::BadObservable(format!("unknown Pauli `{other}`"))),
        }
    }

    /// Dense form, first character acting on qubit 0.
    pub fn dense(s: &str) -> Result<Self, SimError> {
        let mut out = PauliString::IDENTITY;
        for (q, ch) in s.chars().enumerate() {
            out = out.times(PauliString::single(q, ch)?)?;
        }
        Ok(out)
    }

    fn times(self, other: PauliString) -> Result<Self, SimError> {
        if (self.x | self.z) & (other.x | other.z) != 0 {
            return Err(SimError::BadObservable("a qubit appears twice in one Pauli string".into()));
        }
        Ok(PauliString { x: self.x | other.x, z: self.z | other.z })
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x >> q & 1, self.z >> q & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (1, 1) => 'Y',
            _ => 'Z',
        }
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// `P|b> = phase * |b ^ x|`.
    fn phase(&self, b: usize) -> Complex64 {
        let sign = if (b as u64 & self.z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let i_pow = match self.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        i_pow * sign
    }
}

impl fmt::Display for PauliString {
    /// Sparse form such as `Z0Z1`; `I` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support() == 0 {
            return f.write_str("I");
        }
        for q in 0..64 {
            if self.support() >> q & 1 == 1 {
                write!(f, "{}{q}", self.letter(q))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliObservable {
    width: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliObservable {
    pub fn new(width: usize) -> Self {
        PauliObservable { width, terms: Vec::new() }
    }

    /// Adds `coefficient * P` with `P` in dense form (`"ZZ"`, `"XI"`).
    pub fn term(mut self, coefficient: f64, dense: &str) -> Result<Self, SimError> {
        if dense.chars().count() != self.width {
            return Err(SimError::BadObservable(format!("`{dense}` is not a {}-qubit string", self.width)));
        }
        self.terms.push((coefficient, PauliString::dense(dense)?));
        Ok(self)
    }

    pub fn push(&mut self, coefficient: f64, p: PauliString) -> Result<(), SimError> {
        if self.width < 64 && p.support() >> self.width != 0 {
            return Err(SimError::BadObservable(format!("`{p}` acts outside {} qubits", self.width)));
        }
        self.terms.push((coefficient, p));
        Ok(())
    }

    /// Parses `1.0*Z0Z1 + 0.5*X0 - I`. A missing coefficient means 1.
    pub fn parse(text: &str, width: usize) -> Result<Self, SimError> {
        let mut obs = PauliObservable::new(width);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(SimError::BadObservable("empty observable".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'*') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1.0, &piece[1..]),
                b'+' => (1.0, &piece[1..]),
                _ => (1.0, piece),
            };
            let (coeff, pauli) = match body.split_once('*') {
                Some((c, p)) => (c.parse::<f64>().map_err(|_| SimError::BadObservable(format!("bad coefficient `{c}`")))?, p),
                None => (1.0, body),
            };
            obs.push(sign * coeff, parse_sparse(pauli)?)?;
        }
        Ok(obs)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn expectation(&self, state: &StateVector) -> Result<f64, SimError> {
        if state.width() != self.width {
            return Err(SimError::WidthMismatch { circuit: self.width, state: state.width() });
        }
        let amps = state.amplitudes();
        let mut total = Complex64::new(0.0, 0.0);
        for &(c, p) in &self.terms {
            let x = p.x as usize;
            let v: Complex64 = amps.iter().enumerate().map(|(b, a)| amps[b ^ x].conj() * p.phase(b) * a).sum();
            total += c * v;
        }
        Ok(total.re)
    }

    /// Dense `2^w x 2^w` matrix.
    pub fn to_matrix(&self) -> Matrix {
        let dim = 1usize << self.width;
        let mut m = DMatrix::zeros(dim, dim);
        for &(c, p) in &self.terms {
            for b in 0..dim {
                m[(b ^ p.x as usize, b)] += p.phase(b) * c;
            }
        }
        m
    }

    /// Smallest eigenvalue by dense Hermitian diagonalization.
    pub fn ground_energy(&self) -> f64 {
        let eig = nalgebra::SymmetricEigen::new(self.to_matrix());
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn parse_sparse(s: &str) -> Result<PauliString, SimError> {
    if s == "I" || s.is_empty() {
        return Ok(PauliString::IDENTITY);
    }
    let mut out = PauliString::IDENTITY;
    let mut chars = s.chars().peekable();
    while let Some(p) = chars.next() {
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let q: usize = digits.parse().map_err(|_| SimError::BadObservable(format!("`{s}`: `{p}` needs a qubit index")))?;
        if q >= 64 {
            return Err(SimError::BadObservable(format!("qubit index {q} too large")));
        }
        out = out.times(PauliString::single(q, p)?)?;
    }
    Ok(out)
}

impl fmt::Display for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, p)) in self.terms.iter().enumerate() {
            match (i, *c < 0.0) {
                (0, false) => write!(f, "{c:?}*{p}")?,
                (0, true) => write!(f, "-{:?}*{p}", -c)?,
                (_, false) => write!(f, " + {c:?}*{p}")?,
                (_, true) => write!(f, " - {:?}*{p}", -c)?,
            }
        }
        Ok(())
    }
}

/// `sum_w w (I - Z_i Z_j) / 2`: the expected cut of a measured state.
pub fn maxcut_observable(n: usize, edges: &[(usize, usize)], weights: &[f64]) -> Result<PauliObservable, SimError> {
    let mut obs = PauliObservable::new(n);
    for (&(i, j), &w) in edges.iter().zip(weights) {
        if i >= n || j >= n || i == j {
            return Err(SimError::BadObservable(format!("edge ({i}, {j}) outside {n} vertices")));
        }
        obs.push(w / 2.0, PauliString::IDENTITY)?;
        obs.push(-w / 2.0, PauliString { x: 0, z: (1 << i) | (1 << j) })?;
    }
    Ok(obs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let o = PauliObservable::parse("1.0*Z0Z1 + 0.5*X0", 2).unwrap();
        assert_eq!(o.terms().len(), 2);
        assert_eq!(o.to_string(), "1.0*Z0Z1 + 0.5*X0");
        let o = PauliObservable::parse("-Z0 - 2.5e-1*Y1", 2).unwrap();
        assert_eq!(o.terms()[0].0, -1.0);
        assert_eq!(o.terms()[1].0, -0.25);
        assert!(PauliObservable::parse("Z0Z0", 2).is_err());
        assert!(PauliObservable::parse("Z3", 2).is_err());
    }

    #[test]
    fn dense_matches_sparse() {
        let a = PauliObservable::new(3).term(1.0, "XIY").unwrap();
        let b = PauliObservable::parse("X0Y2", 3).unwrap();
        assert_eq!(a.to_matrix(), b.to_matrix());
    }

    #[test]
    fn bell_correlations() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::from_amplitudes(vec![
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
        ])
        .unwrap();
        let zz = PauliObservable::parse("Z0Z1", 2).unwrap();
        let zi = PauliObservable::parse("Z0", 2).unwrap();
        assert!((zz.expectation(&bell).unwrap() - 1.0).abs() < 1e-12);
        assert!(zi.expectation(&bell).unwrap().abs() < 1e-12);
        let yy = PauliObservable::parse("Y0Y1", 2).unwrap();
        assert!((yy.expectation(&bell).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_energy_of_ising_pair() {
        let o = PauliObservable::parse("Z0Z1 + 0.5*X0", 2).unwrap();
        assert!((o.ground_energy() + 1.25f64.sqrt()).abs() < 1e-12);
    }
}
