use std::fmt;
use std::str::FromStr;

/// An inclusive range of small integers, written `a` or `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn single(v: usize) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid range {s:?}; expected `a` or `a..b`"));
        let span = match s.split_once("..") {
            Some((a, b)) => Span { lo: num(a)?, hi: num(b.strip_prefix('=').unwrap_or(b))? },
            None => Span::single(num(s)?),
        };
        if span.lo > span.hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!("3".parse::<Span>().unwrap(), Span::single(3));
        assert_eq!("0..3".parse::<Span>().unwrap(), Span { lo: 0, hi: 3 });
        assert_eq!("1..=2".parse::<Span>().unwrap(), Span { lo: 1, hi: 2 });
        assert!("3..1".parse::<Span>().is_err());
        assert!("a..b".parse::<Span>().is_err());
        assert!("-1".parse::<Span>().is_err());
        assert_eq!("2..4".parse::<Span>().unwrap().to_string(), "2..4");
    }
}
