use carleman::invariant::FiniteMatrixGroup;
use carleman::poly::QMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::CliError;

/// A parsed group argument: the closed group plus the generator list it was
/// built from. The generators matter to `equiv`, where a second
/// representation is supplied as matrices paired positionally with these.
pub struct GroupSpec {
    pub name: String,
    pub group: FiniteMatrixGroup,
    pub generators: Vec<QMatrix>,
}

/// Accepted forms: `sign`, `s<n>` (symmetric group on n letters), `c4`,
/// `s2xs2`, `trivial:<n>`, or a path to a JSON file holding an array of
/// square matrices with rational string entries, taken as generators.
pub fn parse_group(spec: &str, max_order: usize) -> Result<GroupSpec, CliError> {
    let named = |group: FiniteMatrixGroup, generators: Vec<QMatrix>| GroupSpec {
        name: spec.to_string(),
        group,
        generators,
    };

    if spec == "sign" {
        let minus = QMatrix::from_i64_rows(&[&[-1]]);
        return Ok(named(FiniteMatrixGroup::sign_group(), vec![minus]));
    }
    if spec == "c4" {
        let rot = QMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        return Ok(named(FiniteMatrixGroup::cyclic4(), vec![rot]));
    }
    if spec == "s2xs2" {
        let s2 = FiniteMatrixGroup::symmetric(2);
        let gens = vec![
            QMatrix::from_i64_rows(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            QMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]),
        ];
        return Ok(named(FiniteMatrixGroup::product(&s2, &s2), gens));
    }
    if let Some(rest) = spec.strip_prefix("trivial:") {
        let n: usize = rest
            .parse()
            .map_err(|_| CliError::usage(format!("bad dimension in group spec '{spec}'")))?;
        if n == 0 {
            return Err(CliError::usage("trivial group needs at least one variable"));
        }
        return Ok(named(FiniteMatrixGroup::trivial(n), vec![QMatrix::identity(n)]));
    }
    if let Some(rest) = spec.strip_prefix('s') {
        if let Ok(n) = rest.parse::<usize>() {
            if n == 0 {
                return Err(CliError::usage("symmetric group needs at least one letter"));
            }
            let gens = adjacent_transpositions(n);
            return Ok(named(FiniteMatrixGroup::symmetric(n), gens));
        }
    }

    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::usage(format!("unknown group '{spec}' and no such file: {e}")))?;
    let mats: Vec<QMatrix> = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("cannot parse generator matrices from {spec}: {e}")))?;
    if mats.is_empty() {
        return Err(CliError::usage(format!("{spec} holds no generator matrices")));
    }
    let group = FiniteMatrixGroup::from_generators(&mats, max_order)?;
    Ok(GroupSpec { name: spec.to_string(), group, generators: mats })
}

fn adjacent_transpositions(n: usize) -> Vec<QMatrix> {
    if n == 1 {
        return vec![QMatrix::identity(1)];
    }
    (0..n - 1)
        .map(|i| {
            let mut m = QMatrix::identity(n);
            m.set(i, i, BigRational::zero());
            m.set(i + 1, i + 1, BigRational::zero());
            m.set(i, i + 1, BigRational::one());
            m.set(i + 1, i, BigRational::one());
            m
        })
        .collect()
}

/// Read a JSON array of matrices acting on the target side, one per source
/// generator, in the same order.
pub fn read_matrix_list(path: &str) -> Result<Vec<QMatrix>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("cannot parse matrices from {path}: {e}")))
}

/// Comma-separated block sizes, e.g. `2,2`.
pub fn parse_blocks(spec: &str) -> Result<Vec<usize>, CliError> {
    let blocks: Result<Vec<usize>, _> = spec.split(',').map(|s| s.trim().parse::<usize>()).collect();
    match blocks {
        Ok(b) if !b.is_empty() && b.iter().all(|&m| m >= 1) => Ok(b),
        _ => Err(CliError::usage(format!("bad block list '{spec}', expected e.g. 2,2"))),
    }
}

/// A rational CLI argument, `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::usage(format!("bad rational '{s}'"));
    match s.split_once('/') {
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}
