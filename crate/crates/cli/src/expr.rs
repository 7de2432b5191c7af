//! Products of Gaussian integers such as `i*(1+i)^2*(-1+2i)*(-127)^3`.

use selmer_core::GaussianInt;

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_factor(s: &str) -> Result<GaussianInt, String> {
    let s = s.trim();
    let (base, exp) = match split_top_level(s, '^').as_slice() {
        [base] => (*base, 1),
        [base, e] => (*base, e.trim().parse::<u32>().map_err(|_| format!("bad exponent in {s:?}"))?),
        _ => return Err(format!("bad factor {s:?}")),
    };
    let base = base.trim();
    let inner = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base);
    let value: GaussianInt = inner.trim().parse().map_err(|e| format!("{e}"))?;
    value.checked_pow(exp).ok_or_else(|| format!("{s:?} overflows"))
}

/// Parses a `*`-separated product of optionally parenthesised factors, each
/// with an optional `^exponent`.
pub fn parse(s: &str) -> Result<GaussianInt, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    split_top_level(&s, '*').into_iter().try_fold(GaussianInt::from_int(1), |acc, f| {
        let v = parse_factor(f)?;
        acc.checked_mul(v).ok_or_else(|| "product overflows".to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_and_products() {
        assert_eq!(parse("3-2i").unwrap(), GaussianInt::new(3, -2));
        assert_eq!(parse("i*(1+i)^2").unwrap(), GaussianInt::new(-2, 0));
        assert_eq!(parse("(-127)^3 * 2").unwrap(), GaussianInt::from_int(-127 * 127 * 127 * 2));
        assert!(parse("").is_err());
        assert!(parse("(1+i)^x").is_err());
        assert!(parse("(1+i)^300").is_err());
    }
}
