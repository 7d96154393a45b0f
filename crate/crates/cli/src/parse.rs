//! Parsers for the textual arguments: reals with named constants, complex
//! points, grids and comma-separated lists.

use std::f64::consts::E;

use lwik::analysis::{linear_grid, log_grid};
use lwik::representations::RepresentationId;
use lwik::{c64, Complex64};

/// A real literal, or one of the tokens `e`, `-e`, `1/e`, `-1/e`.
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let v = match body {
        "e" => E,
        "1/e" => 1.0 / E,
        _ => t
            .parse::<f64>()
            .map_err(|_| format!("cannot parse {s:?} as a real number"))?,
    };
    let v = if matches!(body, "e" | "1/e") && neg { -v } else { v };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// `re,im` or a bare real.
pub fn complex(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(c64(real(re)?, real(im)?)),
        None => Ok(c64(real(s)?, 0.0)),
    }
}

/// `start:stop:count[:log]`, endpoints included.
pub fn grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let (start, stop, count, log) = match parts.as_slice() {
        [a, b, n] => (real(a)?, real(b)?, *n, false),
        [a, b, n, "log"] => (real(a)?, real(b)?, *n, true),
        _ => return Err(format!("grid {s:?} is not of the form start:stop:count[:log]")),
    };
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| format!("grid count {count:?} is not a non-negative integer"))?;
    if count == 0 {
        return Err("grid count must be at least 1".into());
    }
    if log {
        if !(start > 0.0 && stop > 0.0) {
            return Err(format!("log grid needs positive endpoints, got {start} and {stop}"));
        }
        Ok(log_grid(start, stop, count))
    } else {
        Ok(linear_grid(start, stop, count))
    }
}

pub fn rep(s: &str) -> Result<RepresentationId, String> {
    RepresentationId::from_name(s.trim()).ok_or_else(|| {
        let known: Vec<&str> = RepresentationId::ALL.iter().map(|r| r.name()).collect();
        format!("unknown representation {s:?}; known: {}", known.join(", "))
    })
}

/// Resolves a list of comma-separated representation tags; `all` expands to
/// every representation. `None` means no filter was given.
pub fn rep_filter(items: Option<&[String]>) -> Result<Vec<RepresentationId>, String> {
    let Some(items) = items else {
        return Ok(RepresentationId::ALL.to_vec());
    };
    let mut out = Vec::new();
    for name in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            out.extend(RepresentationId::ALL);
        } else {
            out.push(rep(name)?);
        }
    }
    if out.is_empty() {
        return Err("the representation filter is empty".into());
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|r| seen.insert(*r));
    Ok(out)
}

/// Comma-separated reals, e.g. `--params 0.5,2`.
pub fn real_list(s: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(real).collect()
}

/// A positive tolerance.
pub fn tol(s: &str) -> Result<f64, String> {
    let v = real(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {v}"))
    }
}

pub fn tol_list(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s.split(',').map(tol).collect::<Result<_, _>>()?;
    if v.is_empty() {
        Err("empty tolerance ladder".into())
    } else {
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens() {
        assert_eq!(real("e").unwrap(), E);
        assert_eq!(real("-e").unwrap(), -E);
        assert_eq!(real("1/e").unwrap(), 1.0 / E);
        assert_eq!(real("-1/e").unwrap(), -1.0 / E);
        assert_eq!(real(" 2.5 ").unwrap(), 2.5);
        assert_eq!(real("-1e-3").unwrap(), -1e-3);
        assert!(real("pi").is_err());
        assert!(real("inf").is_err());
    }

    #[test]
    fn complex_points() {
        assert_eq!(complex("1.5").unwrap(), c64(1.5, 0.0));
        assert_eq!(complex("-0.5,2").unwrap(), c64(-0.5, 2.0));
        assert_eq!(complex("e,-1").unwrap(), c64(E, -1.0));
        assert!(complex("1,").is_err());
        assert!(complex("1,2,3").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = grid("1:100:3:log").unwrap();
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert_eq!(grid("2:3:1").unwrap(), vec![2.0]);
        assert!(grid("0:1").is_err());
        assert!(grid("0:1:0").is_err());
        assert!(grid("0:1:3:log").is_err());
        assert!(grid("0:1:3:lin").is_err());
    }

    #[test]
    fn filters() {
        assert_eq!(rep_filter(None).unwrap().len(), 21);
        let two = vec!["thorin,cauer-z2".to_string(), "thorin".to_string()];
        assert_eq!(
            rep_filter(Some(&two)).unwrap(),
            vec![RepresentationId::ThorinW, RepresentationId::CauerZ2]
        );
        assert!(rep_filter(Some(&[String::new()])).is_err());
        assert!(rep_filter(Some(&["nope".to_string()])).is_err());
    }
}
