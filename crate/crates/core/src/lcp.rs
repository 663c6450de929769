//! Longest common prefixes and suffixes of normal swords.

use crate::error::Result;
use crate::normalizer::NormalSword;
use crate::sword::{walk, Sword};

/// The longest sword that is a prefix of both `a` and `b` (possibly empty).
pub fn longest_common_prefix(a: &NormalSword, b: &NormalSword) -> Result<Sword> {
    lcp_swords(a.sword(), b.sword())
}

/// Mirror image of the prefix computation.
pub fn longest_common_suffix(a: &NormalSword, b: &NormalSword) -> Result<Sword> {
    lcp_swords(&a.sword().mirror()?, &b.sword().mirror()?)?.mirror()
}

pub fn normal_equal(a: &NormalSword, b: &NormalSword) -> Result<bool> {
    if a.sword().length() != b.sword().length() {
        return Ok(false);
    }
    if a == b {
        return Ok(true);
    }
    Ok(longest_common_prefix(a, b)?.length() == a.sword().length())
}

pub(crate) fn lcp_swords(a: &Sword, b: &Sword) -> Result<Sword> {
    let (common, _, _) = walk(a.items(), b.items())?;
    Sword::from_canonical(common)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalizer::normalize;
    use crate::zterm::parse_zword;

    fn n(s: &str) -> NormalSword {
        normalize(&parse_zword(s).unwrap()).unwrap()
    }

    fn lcp(a: &str, b: &str) -> String {
        longest_common_prefix(&n(a), &n(b)).unwrap().to_string()
    }

    fn lcs(a: &str, b: &str) -> String {
        longest_common_suffix(&n(a), &n(b)).unwrap().to_string()
    }

    #[test]
    fn prefixes() {
        assert_eq!(lcp("xyz", "xyw"), "xy");
        assert_eq!(lcp("x^w y", "x^w z"), "x^w");
        assert_eq!(lcp("(xy)^w x", "(xy)^(w+2)"), "(xy)^wx");
        assert_eq!(lcp("x", "y"), "ε");
    }

    #[test]
    fn suffixes() {
        assert_eq!(lcs("zyx", "wyx"), "yx");
        assert_eq!(lcs("y x^w", "z x^w"), "x^w");
        let s = longest_common_suffix(&n("x(yx)^w"), &n("(xy)^(w+2)")).unwrap();
        let m = lcp_swords(&n("x(yx)^w").sword().mirror().unwrap(), &n("(xy)^(w+2)").sword().mirror().unwrap()).unwrap();
        assert_eq!(s, m.mirror().unwrap());
        assert!(n("x(yx)^w").sword().strip_suffix(&s).unwrap().is_some());
    }

    #[test]
    fn equality() {
        assert!(normal_equal(&n("(xy)^w x"), &n("x(yx)^w")).unwrap());
        assert!(!normal_equal(&n("x^w"), &n("x^(w+1)")).unwrap());
        assert!(normal_equal(&n("x"), &n("x")).unwrap());
    }
}
