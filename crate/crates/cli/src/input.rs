//! Weight lists, rational flags and output sinks.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use radlab::rational::parse_rational;
use radlab::{Rational, WeightVector};

/// Splits `v×k`, `vxk` or `v*k` into the value and its repeat count.
fn split_repeat(token: &str) -> Result<(&str, usize)> {
    let cut = token
        .char_indices()
        .rev()
        .find(|(_, c)| is_repeat_marker(*c));
    match cut {
        Some((i, c)) => {
            let count = token[i + c.len_utf8()..].trim();
            let count: usize = count
                .parse()
                .with_context(|| format!("bad repeat count {count:?} in {token:?}"))?;
            if count == 0 {
                bail!("repeat count must be positive in {token:?}");
            }
            Ok((token[..i].trim(), count))
        }
        None => Ok((token, 1)),
    }
}

fn is_repeat_marker(c: char) -> bool {
    matches!(c, '×' | 'x' | 'X' | '*')
}

/// Drops blanks next to a repeat marker so `1/3 x 9` reads as one entry.
fn join_repeats(line: &str) -> String {
    let chars: Vec<char> = line.chars().collect();
    let neighbour = |from: usize, step: isize| {
        let mut i = from as isize + step;
        while i >= 0 && (i as usize) < chars.len() && chars[i as usize] == ' ' {
            i += step;
        }
        (i >= 0 && (i as usize) < chars.len()).then(|| chars[i as usize])
    };
    chars
        .iter()
        .enumerate()
        .filter(|&(i, c)| {
            *c != ' ' || !(neighbour(i, -1).is_some_and(is_repeat_marker) || neighbour(i, 1).is_some_and(is_repeat_marker))
        })
        .map(|(_, c)| c)
        .collect()
}

/// Tokens of a weight list: commas, whitespace and newlines separate
/// entries, `#` starts a comment.
fn tokens(text: &str) -> Vec<String> {
    text.lines()
        .map(|line| join_repeats(&line.split('#').next().unwrap_or("").replace('\t', " ")))
        .flat_map(|line| {
            line.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Reads the list inline or, if `spec` names an existing file, from it.
fn source(spec: &str) -> Result<String> {
    let path = Path::new(spec);
    if path.is_file() {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    } else {
        Ok(spec.to_string())
    }
}

fn expand<T: Clone>(spec: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let text = source(spec)?;
    let mut out = Vec::new();
    for token in tokens(&text) {
        let (value, count) = split_repeat(&token)?;
        let value = parse(value)?;
        out.extend(std::iter::repeat_n(value, count));
    }
    if out.is_empty() {
        bail!("no weights given");
    }
    Ok(out)
}

pub fn parse_weight_list(spec: &str) -> Result<Vec<Rational>> {
    expand(spec, |t| Ok(parse_rational(t)?))
}

/// Exact weights must square-sum to one; float weights only to within
/// 1e-12 and are projected onto a nearby exact unit vector.
pub fn load_weights(spec: &str, float: bool) -> Result<WeightVector> {
    if float {
        let values = expand(spec, |t| t.parse::<f64>().with_context(|| format!("bad float {t:?}")))?;
        Ok(WeightVector::from_floats(&values)?)
    } else {
        Ok(WeightVector::new(&parse_weight_list(spec)?)?)
    }
}

pub fn positive_rational(text: &str) -> Result<Rational, String> {
    let value = parse_rational(text).map_err(|e| e.to_string())?;
    if value <= Rational::from_integer(0.into()) {
        return Err(format!("{text} is not positive"));
    }
    Ok(value)
}

pub fn nonnegative_rational(text: &str) -> Result<Rational, String> {
    let value = parse_rational(text).map_err(|e| e.to_string())?;
    if value < Rational::from_integer(0.into()) {
        return Err(format!("{text} is negative"));
    }
    Ok(value)
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&PathBuf>, body: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body)?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use radlab::rational::ratio;

    #[test]
    fn repetition_forms() {
        for spec in ["1/3×9", "1/3x9", "1/3*9", "1/3 X 9", "1/3 x9"] {
            assert_eq!(parse_weight_list(spec).unwrap(), vec![ratio(1, 3); 9]);
        }
        assert_eq!(
            parse_weight_list("0.5x2, 1/2 0.5").unwrap(),
            vec![ratio(1, 2); 4]
        );
        assert!(parse_weight_list("1/2x0").is_err());
        assert!(parse_weight_list("1/2xq").is_err());
        assert!(parse_weight_list(" , ").is_err());
    }

    #[test]
    fn comments_and_lines() {
        let text = "# header\n3/5 # first\n0.8\n0.1 x 2\t0.2\n";
        assert_eq!(tokens(text), vec!["3/5", "0.8", "0.1x2", "0.2"]);
    }

    #[test]
    fn float_mode_projects() {
        let a = load_weights("0.6,0.8", true).unwrap();
        assert!(a.is_ingested());
        assert!(load_weights("0.6,0.7", true).is_err());
        assert!(!load_weights("3/5,4/5", false).unwrap().is_ingested());
    }

    #[test]
    fn rational_flags() {
        assert_eq!(positive_rational("1/200").unwrap(), ratio(1, 200));
        assert!(positive_rational("0").is_err());
        assert!(nonnegative_rational("0").is_ok());
        assert!(nonnegative_rational("-1").is_err());
    }
}
