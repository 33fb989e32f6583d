//! Parser for polynomials written as `+`-separated products of powers,
//! e.g. `x^2*y + y^3 + 1`.

use super::monomial::Exponents;
use smallvec::SmallVec;

/// A parse failure at a 1-based column of the input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    pub column: usize,
    pub message: String,
}

fn err(column: usize, message: impl Into<String>) -> PolyParseError {
    PolyParseError {
        column,
        message: message.into(),
    }
}

/// Parses `text` into a list of exponent vectors (repeated terms cancel).
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Vec<Exponents>, PolyParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut terms: Vec<Exponents> = Vec::new();
    loop {
        // One product term.
        let mut exps: Exponents = SmallVec::from_elem(0, names.len());
        let mut zero = false;
        loop {
            skip_ws(&mut pos);
            let start = pos;
            if pos >= chars.len() {
                return Err(err(start + 1, "expected a factor"));
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let lit: String = chars[start..pos].iter().collect();
                match lit.parse::<u64>() {
                    Ok(k) if k % 2 == 0 => zero = true,
                    Ok(_) => {}
                    Err(_) => return Err(err(start + 1, "invalid integer literal")),
                }
            } else if c.is_alphabetic() || c == '_' {
                while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                    pos += 1;
                }
                let name: String = chars[start..pos].iter().collect();
                let idx = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| err(start + 1, format!("undeclared generator `{name}`")))?;
                skip_ws(&mut pos);
                let mut power = 1u16;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let s = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if s == pos {
                        return Err(err(s + 1, "expected an exponent after `^`"));
                    }
                    let lit: String = chars[s..pos].iter().collect();
                    power = lit
                        .parse::<u16>()
                        .map_err(|_| err(s + 1, "exponent out of range"))?;
                }
                exps[idx] = exps[idx]
                    .checked_add(power)
                    .ok_or_else(|| err(start + 1, "exponent out of range"))?;
            } else {
                return Err(err(start + 1, format!("unexpected character `{c}`")));
            }
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        if !zero {
            if let Some(i) = terms.iter().position(|t| *t == exps) {
                terms.remove(i);
            } else {
                terms.push(exps);
            }
        }
        skip_ws(&mut pos);
        if pos >= chars.len() {
            break;
        }
        if chars[pos] == '+' {
            pos += 1;
            continue;
        }
        return Err(err(pos + 1, format!("unexpected character `{}`", chars[pos])));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_sums_of_products() {
        let t = parse_polynomial("x^2*y + y + 1", &names()).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].as_slice(), &[2, 1]);
        assert_eq!(t[2].as_slice(), &[0, 0]);
    }

    #[test]
    fn cancels_in_characteristic_two() {
        assert!(parse_polynomial("x*y + y*x", &names()).unwrap().is_empty());
        assert!(parse_polynomial("2*x", &names()).unwrap().is_empty());
    }

    #[test]
    fn reports_columns() {
        let e = parse_polynomial("x + z", &names()).unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_polynomial("x +", &names()).unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_polynomial("x ^ ", &names()).unwrap_err();
        assert_eq!(e.column, 5);
    }
}
