//! Named coordinate charts.

use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// An ordered list of distinct coordinate names.
///
/// Charts are cheap to clone. Two charts are equal when their variable lists
/// are equal; the order fixes both the monomial order and the layout of
/// evaluation points.
#[derive(Clone)]
pub struct Chart {
    names: Arc<[String]>,
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn ensure_same(&self, other: &Chart) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::ChartMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart{}", self)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert!(Chart::new(["x", "y", "x"]).is_err());
        let c = Chart::new(["x", "y"]).unwrap();
        assert_eq!(c.index_of("y"), Some(1));
        assert_eq!(c.to_string(), "(x,y)");
    }

    #[test]
    fn equality_is_by_names() {
        let a = Chart::new(["a", "b"]).unwrap();
        let b = Chart::new(["a", "b"]).unwrap();
        let c = Chart::new(["b", "a"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.ensure_same(&c).is_err());
    }
}
