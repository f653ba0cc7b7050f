//! Parsing of `a:b:step` grids and comma-separated lists.

use std::str::FromStr;

use crate::error::CliError;

/// Inclusive arithmetic grid `a, a + step, …, ≤ b`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(CliError::Usage(format!("grid `{text}` must have the form start:stop:step")));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("grid `{text}`: `{s}` is not a number")))
    };
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() {
        return Err(CliError::Usage(format!("grid `{text}` needs a positive step and finite bounds")));
    }
    if stop < start {
        return Err(CliError::Usage(format!("grid `{text}` is empty")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

pub fn parse_list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    let items: Result<Vec<T>, _> = text.split(',').map(|s| s.trim().parse::<T>()).collect();
    match items {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(CliError::Usage(format!("`{text}` is not a valid {what} list"))),
    }
}

/// `E:M` pairs, e.g. `1:2,2:3`.
pub fn parse_encodings(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|item| {
            let (e, m) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("encoding `{item}` must be E:M")))?;
            let e = e.parse().map_err(|_| CliError::Usage(format!("bad excitation count in `{item}`")))?;
            let m = m.parse().map_err(|_| CliError::Usage(format!("bad spin count in `{item}`")))?;
            Ok((e, m))
        })
        .collect()
}
