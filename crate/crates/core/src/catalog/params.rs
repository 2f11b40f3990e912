//! Parameter bindings for primitive instances.

use std::fmt;

use super::CatalogError;

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Text(String),
    List(Vec<ParamValue>),
    Tuple(Vec<ParamValue>),
}

impl ParamValue {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            ParamValue::Int(i) => Some(i as f64),
            ParamValue::Real(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_usize(&self) -> Option<usize> {
        match *self {
            ParamValue::Int(i) if i >= 0 => Some(i as usize),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            ParamValue::Text(s) => Some(s),
            _ => None,
        }
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<i32> for ParamValue {
    fn from(v: i32) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<Vec<f64>> for ParamValue {
    fn from(v: Vec<f64>) -> Self {
        ParamValue::List(v.into_iter().map(ParamValue::Real).collect())
    }
}

impl From<Vec<usize>> for ParamValue {
    fn from(v: Vec<usize>) -> Self {
        ParamValue::List(v.into_iter().map(ParamValue::from).collect())
    }
}

impl From<Vec<(usize, usize)>> for ParamValue {
    fn from(v: Vec<(usize, usize)>) -> Self {
        ParamValue::List(v.into_iter().map(|(a, b)| ParamValue::Tuple(vec![ParamValue::from(a), ParamValue::from(b)])).collect())
    }
}

fn is_bare_word(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-'))
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(i) => write!(f, "{i}"),
            // Debug keeps the shortest round-trip form and always shows a decimal point.
            ParamValue::Real(r) => write!(f, "{r:?}"),
            ParamValue::Text(s) if is_bare_word(s) && s != "pi" => f.write_str(s),
            ParamValue::Text(s) => write!(f, "{s:?}"),
            ParamValue::List(items) | ParamValue::Tuple(items) => {
                let (open, close) = if matches!(self, ParamValue::List(_)) { ('[', ']') } else { ('(', ')') };
                write!(f, "{open}")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, "{close}")
            }
        }
    }
}

/// Ordered `name = value` bindings.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(Vec<(String, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    /// Builder-style insert; replaces an existing binding in place.
    pub fn with(mut self, name: &str, value: impl Into<ParamValue>) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: impl Into<ParamValue>) {
        let value = value.into();
        match self.0.iter_mut().find(|(k, _)| k == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name.to_string(), value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn usize(&self, name: &str) -> Result<Option<usize>, CatalogError> {
        self.get(name).map(|v| v.as_usize().ok_or_else(|| bad(name, "a nonnegative integer", v))).transpose()
    }

    pub fn usize_or(&self, name: &str, default: usize) -> Result<usize, CatalogError> {
        Ok(self.usize(name)?.unwrap_or(default))
    }

    pub fn require_usize(&self, name: &str) -> Result<usize, CatalogError> {
        self.usize(name)?.ok_or_else(|| missing(name))
    }

    pub fn f64(&self, name: &str) -> Result<Option<f64>, CatalogError> {
        self.get(name).map(|v| v.as_f64().ok_or_else(|| bad(name, "a number", v))).transpose()
    }

    pub fn f64_or(&self, name: &str, default: f64) -> Result<f64, CatalogError> {
        Ok(self.f64(name)?.unwrap_or(default))
    }

    pub fn text(&self, name: &str) -> Result<Option<&str>, CatalogError> {
        self.get(name).map(|v| v.as_text().ok_or_else(|| bad(name, "a word", v))).transpose()
    }

    /// A number list; a scalar is accepted as a one-element list.
    pub fn f64_list(&self, name: &str) -> Result<Option<Vec<f64>>, CatalogError> {
        let Some(v) = self.get(name) else { return Ok(None) };
        match v {
            ParamValue::List(items) => items
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| bad(name, "a list of numbers", v)))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            other => other.as_f64().map(|x| Some(vec![x])).ok_or_else(|| bad(name, "a list of numbers", v)),
        }
    }

    /// An integer list; a scalar is accepted as a one-element list.
    pub fn usize_list(&self, name: &str) -> Result<Option<Vec<usize>>, CatalogError> {
        let Some(v) = self.get(name) else { return Ok(None) };
        match v {
            ParamValue::List(items) => items
                .iter()
                .map(|x| x.as_usize().ok_or_else(|| bad(name, "a list of nonnegative integers", v)))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            other => other.as_usize().map(|x| Some(vec![x])).ok_or_else(|| bad(name, "a list of integers", v)),
        }
    }

    pub fn text_list(&self, name: &str) -> Result<Option<Vec<String>>, CatalogError> {
        let Some(v) = self.get(name) else { return Ok(None) };
        match v {
            ParamValue::List(items) => items
                .iter()
                .map(|x| x.as_text().map(str::to_string).ok_or_else(|| bad(name, "a list of words", v)))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            ParamValue::Text(s) => Ok(Some(vec![s.clone()])),
            _ => Err(bad(name, "a list of words", v)),
        }
    }

    /// Edge list written as `[(0, 1), (1, 2)]`.
    pub fn edges(&self, name: &str) -> Result<Option<Vec<(usize, usize)>>, CatalogError> {
        let Some(v) = self.get(name) else { return Ok(None) };
        let ParamValue::List(items) = v else { return Err(bad(name, "a list of (a, b) pairs", v)) };
        items
            .iter()
            .map(|item| match item {
                ParamValue::Tuple(pair) if pair.len() == 2 => match (pair[0].as_usize(), pair[1].as_usize()) {
                    (Some(a), Some(b)) => Ok((a, b)),
                    _ => Err(bad(name, "a list of (a, b) pairs", v)),
                },
                _ => Err(bad(name, "a list of (a, b) pairs", v)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

fn bad(name: &str, expected: &str, got: &ParamValue) -> CatalogError {
    CatalogError::BadParams(format!("`{name}` must be {expected}, got `{got}`"))
}

fn missing(name: &str) -> CatalogError {
    CatalogError::BadParams(format!("missing required parameter `{name}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accessors() {
        let p = Params::new()
            .with("n", 3usize)
            .with("theta", vec![0.5, 1.0])
            .with("marked", vec![5usize])
            .with("edges", vec![(0usize, 1usize), (1, 2)])
            .with("variant", "phi+");
        assert_eq!(p.require_usize("n").unwrap(), 3);
        assert_eq!(p.f64_list("theta").unwrap().unwrap(), vec![0.5, 1.0]);
        assert_eq!(p.usize_list("marked").unwrap().unwrap(), vec![5]);
        assert_eq!(p.edges("edges").unwrap().unwrap(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.text("variant").unwrap(), Some("phi+"));
        assert!(p.require_usize("t").is_err());
        assert!(p.usize("variant").is_err());
    }

    #[test]
    fn display_is_manifest_syntax() {
        let p = Params::new().with("n", 2usize).with("dt", 0.1).with("edges", vec![(0usize, 1usize)]).with("gate", "cx");
        assert_eq!(p.to_string(), "n=2, dt=0.1, edges=[(0, 1)], gate=cx");
        assert_eq!(ParamValue::Real(2.0).to_string(), "2.0");
        assert_eq!(ParamValue::Text("two words".into()).to_string(), "\"two words\"");
    }
}
