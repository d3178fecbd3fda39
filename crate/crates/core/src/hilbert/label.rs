use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single-site level label `a` in `{-(d-1)/2, ..., (d-1)/2}`.
///
/// Stored as `2a` so half-integer labels stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Label(i32);

impl Label {
    pub const fn from_twice(twice: i32) -> Self {
        Label(twice)
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// The label stored at canonical digit `digit`; digit 0 is the top label `(d-1)/2`.
    pub fn from_digit(d: usize, digit: usize) -> Self {
        Label(d as i32 - 1 - 2 * digit as i32)
    }

    /// Canonical digit `(d-1)/2 - a`, or `None` when the label is not valid for `d`.
    pub fn digit(self, d: usize) -> Option<usize> {
        let top = d as i32 - 1;
        let offset = top - self.0;
        if self.0.abs() > top || offset % 2 != 0 {
            None
        } else {
            Some((offset / 2) as usize)
        }
    }

    pub fn is_valid_for(self, d: usize) -> bool {
        self.digit(d).is_some()
    }

    /// All labels for dimension `d` in canonical (descending) order.
    pub fn all(d: usize) -> impl Iterator<Item = Label> {
        (0..d).map(move |k| Label::from_digit(d, k))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::LabelParse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => {
                let v: i32 = t.parse().map_err(|_| bad())?;
                v.checked_mul(2).map(Label).ok_or_else(bad)
            }
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => num.checked_mul(2).map(Label).ok_or_else(bad),
                    "2" => Ok(Label(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for Label {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for (s, twice) in [("1/2", 1), ("-3/2", -3), ("1", 2), ("0", 0), ("-1", -2)] {
            let l: Label = s.parse().unwrap();
            assert_eq!(l.twice(), twice);
            assert_eq!(l.to_string(), s);
        }
        assert_eq!("+1/2".parse::<Label>().unwrap(), Label::from_twice(1));
        assert_eq!("2/2".parse::<Label>().unwrap(), Label::from_twice(2));
        assert!("1/3".parse::<Label>().is_err());
        assert!("half".parse::<Label>().is_err());
    }

    #[test]
    fn lattice_membership() {
        assert!(Label::from_twice(1).is_valid_for(2));
        assert!(!Label::from_twice(2).is_valid_for(2));
        assert!(!Label::from_twice(0).is_valid_for(2));
        assert!(Label::from_twice(0).is_valid_for(3));
        assert!(!Label::from_twice(4).is_valid_for(3));
        assert!(Label::from_twice(-3).is_valid_for(4));
    }

    #[test]
    fn digits_descend() {
        let labels: Vec<String> = Label::all(4).map(|l| l.to_string()).collect();
        assert_eq!(labels, ["3/2", "1/2", "-1/2", "-3/2"]);
        for d in 2..7 {
            for k in 0..d {
                assert_eq!(Label::from_digit(d, k).digit(d), Some(k));
            }
        }
    }
}
