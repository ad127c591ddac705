//! Ordinates of nontrivial zeros: zero-list files, native scanning for ζ and
//! real characters, explicit counting brackets and tail brackets.

mod count;
mod scan;
mod tail;

pub use count::{
    bmor_bracket, bmor_radius, count_lower_estimate, ell, n_tilde, zeta_count_bracket,
    zeta_main_count, CountBracket, MIN_ELL, MIN_HEIGHT,
};
pub use scan::{
    hardy_z, l_hardy_z, l_zero_count, l_zero_scan, zeta_zero_count, zeta_zero_scan,
    MAX_L_CONDUCTOR, MAX_L_HEIGHT, MAX_ZETA_HEIGHT, SCAN_STEP,
};
pub use tail::{
    count_estimate_integral, tail_bracket, tilde_tail_lower_bound, CountModel, Weight,
};

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::arith::{CharacterGroup, FundamentalDiscriminant};
use crate::error::{Error, Result};

/// Which L-function a zero list belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LFunctionId {
    Zeta,
    /// `L(s, χ_d)`
    Discriminant(i64),
    /// character number `index` of [`CharacterGroup::new(modulus)`]
    Character { modulus: u64, index: u64 },
}

impl LFunctionId {
    /// Conductor and parity of the underlying primitive L-function.
    pub fn conductor_and_parity(&self) -> Result<(u64, u8)> {
        match *self {
            LFunctionId::Zeta => Ok((1, 0)),
            LFunctionId::Discriminant(d) => {
                let d = FundamentalDiscriminant::new(d)?;
                Ok((d.conductor(), d.kappa()))
            }
            LFunctionId::Character { modulus, index } => {
                let chi = character(modulus, index)?;
                Ok((chi.conductor(), chi.kappa()))
            }
        }
    }

    /// Whether the zeros are symmetric about the real axis.
    pub fn is_self_dual(&self) -> Result<bool> {
        match *self {
            LFunctionId::Zeta | LFunctionId::Discriminant(_) => Ok(true),
            LFunctionId::Character { modulus, index } => Ok(character(modulus, index)?.is_real()),
        }
    }

    fn header(&self) -> String {
        match self {
            LFunctionId::Zeta => "lfunction: zeta".to_string(),
            LFunctionId::Discriminant(d) => format!("discriminant: {d}"),
            LFunctionId::Character { modulus, index } => {
                format!("modulus: {modulus}, character-index: {index}")
            }
        }
    }
}

fn character(modulus: u64, index: u64) -> Result<crate::arith::DirichletCharacter> {
    if modulus == 0 {
        return Err(Error::precondition("character modulus must be positive"));
    }
    let group = CharacterGroup::new(modulus);
    if index >= group.order() {
        return Err(Error::precondition(format!(
            "character index {index} out of range modulo {modulus}"
        )));
    }
    Ok(group.character(index))
}

impl fmt::Display for LFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LFunctionId::Zeta => write!(f, "zeta"),
            LFunctionId::Discriminant(d) => write!(f, "chi_{d}"),
            LFunctionId::Character { modulus, index } => write!(f, "chi_{modulus}_{index}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Ingested,
    Scanned,
}

/// Positive zero ordinates of one L-function, complete up to `t_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroList {
    pub id: LFunctionId,
    pub ordinates: Vec<f64>,
    pub t_max: f64,
    pub source: ZeroSource,
}

/// Two ordinates closer than this are treated as a duplicate.
pub const DUPLICATE_TOLERANCE: f64 = 1e-10;

impl ZeroList {
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Number of listed ordinates `<= t`.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// `Σ w(γ)` over listed ordinates `<= t`.
    pub fn weight_sum(&self, weight: Weight, t: f64) -> f64 {
        // smallest terms first
        self.ordinates[..self.count_up_to(t)]
            .iter()
            .rev()
            .map(|&g| weight.at(g))
            .sum()
    }

    /// The zero-list file text.
    pub fn to_text(&self) -> String {
        let mut s = format!("# {}\n# t_max: {}\n", self.id.header(), self.t_max);
        for g in &self.ordinates {
            s.push_str(&format!("{g:.12}\n"));
        }
        s
    }

    /// Writes the list; the file only appears once it is complete.
    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomically(path, self.to_text().as_bytes())
    }

    /// Parses zero-list text. `fallback_id` is used when the header names no
    /// L-function. Ordinates must be positive and strictly increasing.
    pub fn parse(text: &str, origin: &Path, fallback_id: Option<&LFunctionId>) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: origin.display().to_string(),
            line,
            message,
        };
        let mut id = None;
        let mut t_max = None;
        let mut ordinates: Vec<f64> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if let Some(parsed) = parse_header(h.trim()).map_err(|m| parse_err(line_no, m))? {
                    match parsed {
                        Header::Id(v) => id = Some(v),
                        Header::TMax(v) => t_max = Some(v),
                    }
                }
                continue;
            }
            let g: f64 = line
                .parse()
                .map_err(|_| parse_err(line_no, format!("not a number: {line:?}")))?;
            if !(g.is_finite() && g > 0.0) {
                return Err(parse_err(line_no, format!("ordinate must be positive, got {g}")));
            }
            if let Some(&prev) = ordinates.last() {
                if g < prev - DUPLICATE_TOLERANCE {
                    return Err(parse_err(line_no, format!("ordinates decrease: {g} after {prev}")));
                }
                if (g - prev).abs() <= DUPLICATE_TOLERANCE {
                    return Err(parse_err(line_no, format!("duplicate ordinate {g}")));
                }
            }
            ordinates.push(g);
        }
        let id = id
            .or_else(|| fallback_id.cloned())
            .ok_or_else(|| parse_err(1, "no L-function named in the header".into()))?;
        let last = ordinates.last().copied().unwrap_or(0.0);
        let t_max = t_max.unwrap_or(last);
        if t_max < last {
            return Err(parse_err(1, format!("t_max {t_max} below the last ordinate {last}")));
        }
        Ok(ZeroList {
            id,
            ordinates,
            t_max,
            source: ZeroSource::Ingested,
        })
    }

    /// Checks the number of ordinates up to `t_max` against the explicit
    /// counting bounds where they apply.
    pub fn check_count(&self) -> Result<()> {
        let t = self.t_max;
        let n = self.count_up_to(t) as f64;
        match &self.id {
            LFunctionId::Zeta => {
                if t >= 10.0 && (n - zeta_main_count(t)).abs() > 5.0 {
                    return Err(Error::Consistency(format!(
                        "{} ordinates of zeta up to {t}, expected about {:.1}",
                        n,
                        zeta_main_count(t)
                    )));
                }
            }
            other => {
                let (q, kappa) = other.conductor_and_parity()?;
                if let Ok(b) = bmor_bracket(t, q, kappa) {
                    let ok = if other.is_self_dual()? {
                        b.contains(2.0 * n)
                    } else {
                        n <= b.upper
                    };
                    if !ok {
                        return Err(Error::Consistency(format!(
                            "{n} ordinates of {other} up to {t} violate the counting bracket [{:.2}, {:.2}]",
                            b.lower, b.upper
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

enum Header {
    Id(LFunctionId),
    TMax(f64),
}

fn parse_header(h: &str) -> std::result::Result<Option<Header>, String> {
    let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("bad number {v:?}"));
    let int = |v: &str| v.trim().parse::<i64>().map_err(|_| format!("bad integer {v:?}"));
    if h == "zeta" {
        return Ok(Some(Header::Id(LFunctionId::Zeta)));
    }
    let Some((key, value)) = h.split_once(':') else {
        return Ok(None);
    };
    match key.trim() {
        "lfunction" => match value.trim() {
            "zeta" => Ok(Some(Header::Id(LFunctionId::Zeta))),
            other => Err(format!("unknown L-function {other:?}")),
        },
        "discriminant" => {
            let d = int(value)?;
            FundamentalDiscriminant::new(d).map_err(|e| e.to_string())?;
            Ok(Some(Header::Id(LFunctionId::Discriminant(d))))
        }
        "modulus" => {
            let (m, rest) = value
                .split_once(',')
                .ok_or_else(|| "expected \"modulus: q, character-index: j\"".to_string())?;
            let (k, j) = rest
                .split_once(':')
                .ok_or_else(|| "expected \"character-index: j\"".to_string())?;
            if k.trim() != "character-index" {
                return Err(format!("unexpected key {:?}", k.trim()));
            }
            let (modulus, index) = (int(m)?, int(j)?);
            if modulus < 1 || index < 0 {
                return Err("modulus and index must be non-negative".into());
            }
            character(modulus as u64, index as u64).map_err(|e| e.to_string())?;
            Ok(Some(Header::Id(LFunctionId::Character {
                modulus: modulus as u64,
                index: index as u64,
            })))
        }
        "t_max" => Ok(Some(Header::TMax(num(value)?))),
        _ => Ok(None),
    }
}

/// Reads and validates a zero-list file.
pub fn ingest_zero_list(path: &Path, fallback_id: Option<&LFunctionId>) -> Result<ZeroList> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let list = ZeroList::parse(&text, path, fallback_id)?;
    list.check_count()?;
    Ok(list)
}

/// Every readable zero list in a directory (files ending in `.zeros`).
pub fn ingest_dir(dir: &Path) -> Result<Vec<ZeroList>> {
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "zeros"))
        .collect();
    paths.sort();
    paths.iter().map(|p| ingest_zero_list(p, None)).collect()
}

/// Writes `bytes` to a sibling temporary file and renames it into place.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::precondition(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.partial", name.to_string_lossy()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ZeroList> {
        ZeroList::parse(text, Path::new("test.zeros"), None)
    }

    #[test]
    fn parses_headers() {
        let z = parse("# zeta\n14.134725142\n21.022039639\n").unwrap();
        assert_eq!(z.id, LFunctionId::Zeta);
        assert_eq!(z.len(), 2);
        assert_eq!(z.t_max, 21.022039639);
        let z = parse("# discriminant: -4\n# t_max: 10\n6.020948904697\n").unwrap();
        assert_eq!(z.id, LFunctionId::Discriminant(-4));
        assert_eq!(z.t_max, 10.0);
        let z = parse("# modulus: 5, character-index: 1\n").unwrap();
        assert_eq!(z.id, LFunctionId::Character { modulus: 5, index: 1 });
        assert_eq!(z.t_max, 0.0);
        assert!(z.is_empty());
    }

    #[test]
    fn rejects_bad_files() {
        let err = parse("# zeta\n21.0\n14.1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse("# zeta\n14.1\n14.1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse("# zeta\n14.1\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse("14.1\n").is_err());
        assert!(parse("# discriminant: 6\n").is_err());
        assert!(parse("# modulus: 5, character-index: 4\n").is_err());
        assert!(ZeroList::parse("14.1\n", Path::new("x"), Some(&LFunctionId::Zeta)).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let z = ZeroList {
            id: LFunctionId::Discriminant(5),
            ordinates: vec![6.648453345, 9.831444361],
            t_max: 10.0,
            source: ZeroSource::Scanned,
        };
        let path = dir.path().join("d5.zeros");
        z.write(&path).unwrap();
        let back = ingest_zero_list(&path, None).unwrap();
        assert_eq!(back.ordinates, z.ordinates);
        assert_eq!(back.t_max, 10.0);
        assert_eq!(back.to_text(), z.to_text());
        assert!(z.write(&dir.path().join("missing/dir/x.zeros")).is_err());
        assert!(!dir.path().join("missing").exists());
    }

    #[test]
    fn count_check() {
        let z = ZeroList {
            id: LFunctionId::Zeta,
            ordinates: vec![14.134725142],
            t_max: 100.0,
            source: ZeroSource::Ingested,
        };
        assert!(matches!(z.check_count(), Err(Error::Consistency(_))));
    }
}
