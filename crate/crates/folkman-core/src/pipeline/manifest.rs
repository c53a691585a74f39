//! Persisted record of a schedule run: one stanza per completed stage with
//! parameters, counts, output file and checksum.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::schedule::StageKind;
use super::PipelineError;
use crate::search::AlphaMode;

/// One completed stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub id: String,
    pub label: String,
    pub kind: StageKind,
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub plus_t: usize,
    pub alpha_mode: AlphaMode,
    pub input: Option<String>,
    /// Checksum of the input stage file, `-` for base stages.
    pub input_sha256: String,
    pub input_count: usize,
    pub output_count: usize,
    /// Stage file path relative to the manifest directory.
    pub file: String,
    pub sha256: String,
    pub wall_ms: u128,
}

/// A schedule run: header parameters plus the completed stage records.
#[derive(Clone, Debug)]
pub struct Manifest {
    pub schedule_name: String,
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub final_n: usize,
    pub stages_total: usize,
    pub records: Vec<StageRecord>,
    /// Directory the manifest lives in; stage file paths resolve under it.
    pub dir: PathBuf,
}

impl Manifest {
    pub fn record(&self, id: &str) -> Option<&StageRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn stage_path(&self, record: &StageRecord) -> PathBuf {
        self.dir.join(&record.file)
    }

    /// True when every scheduled stage has a record.
    pub fn is_complete(&self) -> bool {
        self.records.len() == self.stages_total
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("schedule = {}\n", self.schedule_name));
        out.push_str(&format!("m = {}\n", self.m));
        out.push_str(&format!("p = {}\n", self.p));
        out.push_str(&format!("q = {}\n", self.q));
        out.push_str(&format!("final_n = {}\n", self.final_n));
        out.push_str(&format!("stages_total = {}\n", self.stages_total));
        for r in &self.records {
            out.push('\n');
            out.push_str(&format!("stage = {}\n", r.id));
            out.push_str(&format!("label = {}\n", r.label));
            out.push_str(&format!("kind = {}\n", r.kind.as_str()));
            out.push_str(&format!("m = {}\n", r.m));
            out.push_str(&format!("n = {}\n", r.n));
            out.push_str(&format!("k = {}\n", r.k));
            out.push_str(&format!("plus_t = {}\n", r.plus_t));
            let alpha = match r.alpha_mode {
                AlphaMode::Unrestricted => "unrestricted",
                AlphaMode::ExactlyTwo => "exactly_two",
            };
            out.push_str(&format!("alpha_mode = {alpha}\n"));
            out.push_str(&format!("input = {}\n", r.input.as_deref().unwrap_or("-")));
            out.push_str(&format!("input_sha256 = {}\n", r.input_sha256));
            out.push_str(&format!("input_count = {}\n", r.input_count));
            out.push_str(&format!("output_count = {}\n", r.output_count));
            out.push_str(&format!("file = {}\n", r.file));
            out.push_str(&format!("sha256 = {}\n", r.sha256));
            out.push_str(&format!("wall_ms = {}\n", r.wall_ms));
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), PipelineError> {
        fs::write(path, self.render()).map_err(|source| PipelineError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Manifest, PipelineError> {
        let text = fs::read_to_string(path).map_err(|source| PipelineError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        Manifest::parse(&text, dir)
    }

    pub fn parse(text: &str, dir: PathBuf) -> Result<Manifest, PipelineError> {
        let err = |msg: String| PipelineError::Manifest(msg);
        let mut header: Vec<(String, String)> = Vec::new();
        let mut stanzas: Vec<Vec<(String, String)>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim().to_string(), value.trim().to_string());
            if key == "stage" {
                stanzas.push(vec![(key, value)]);
            } else if let Some(cur) = stanzas.last_mut() {
                cur.push((key, value));
            } else {
                header.push((key, value));
            }
        }

        let get = |kvs: &[(String, String)], key: &str| -> Result<String, PipelineError> {
            kvs.iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| err(format!("missing key `{key}`")))
        };
        let get_num = |kvs: &[(String, String)], key: &str| -> Result<usize, PipelineError> {
            get(kvs, key)?
                .parse::<usize>()
                .map_err(|_| err(format!("bad number for `{key}`")))
        };

        let mut records = Vec::with_capacity(stanzas.len());
        for kvs in &stanzas {
            let kind = match get(kvs, "kind")?.as_str() {
                "base" => StageKind::Base,
                "extend" => StageKind::Extend,
                "closure" => StageKind::Closure,
                other => return Err(err(format!("bad kind `{other}`"))),
            };
            let alpha_mode = match get(kvs, "alpha_mode")?.as_str() {
                "unrestricted" => AlphaMode::Unrestricted,
                "exactly_two" => AlphaMode::ExactlyTwo,
                other => return Err(err(format!("bad alpha_mode `{other}`"))),
            };
            let input = match get(kvs, "input")?.as_str() {
                "-" => None,
                v => Some(v.to_string()),
            };
            records.push(StageRecord {
                id: get(kvs, "stage")?,
                label: get(kvs, "label")?,
                kind,
                m: get_num(kvs, "m")?,
                p: 0, // filled from the header below
                q: 0,
                n: get_num(kvs, "n")?,
                k: get_num(kvs, "k")?,
                plus_t: get_num(kvs, "plus_t")?,
                alpha_mode,
                input,
                input_sha256: get(kvs, "input_sha256")?,
                input_count: get_num(kvs, "input_count")?,
                output_count: get_num(kvs, "output_count")?,
                file: get(kvs, "file")?,
                sha256: get(kvs, "sha256")?,
                wall_ms: get(kvs, "wall_ms")?
                    .parse::<u128>()
                    .map_err(|_| err("bad number for `wall_ms`".into()))?,
            });
        }

        let p = get_num(&header, "p")?;
        let q = get_num(&header, "q")?;
        for r in &mut records {
            r.p = p;
            r.q = q;
        }

        Ok(Manifest {
            schedule_name: get(&header, "schedule")?,
            m: get_num(&header, "m")?,
            p,
            q,
            final_n: get_num(&header, "final_n")?,
            stages_total: get_num(&header, "stages_total")?,
            records,
            dir,
        })
    }
}

pub fn sha256_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

pub fn sha256_file(path: &Path) -> io::Result<String> {
    let mut f = fs::File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let read = f.read(&mut buf)?;
        if read == 0 {
            break;
        }
        hasher.update(&buf[..read]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Manifest {
        Manifest {
            schedule_name: "demo".into(),
            m: 8,
            p: 6,
            q: 7,
            final_n: 17,
            stages_total: 3,
            records: vec![StageRecord {
                id: "a0-base".into(),
                label: "wHn(3)(6)(7)(6)".into(),
                kind: StageKind::Base,
                m: 3,
                p: 6,
                q: 7,
                n: 6,
                k: 0,
                plus_t: 6,
                alpha_mode: AlphaMode::Unrestricted,
                input: None,
                input_sha256: "-".into(),
                input_count: 0,
                output_count: 2,
                file: "stages/a0-base.g6".into(),
                sha256: "deadbeef".into(),
                wall_ms: 12,
            }],
            dir: PathBuf::from("."),
        }
    }

    #[test]
    fn roundtrips_through_text() {
        let m = sample();
        let parsed = Manifest::parse(&m.render(), PathBuf::from(".")).unwrap();
        assert_eq!(parsed.schedule_name, m.schedule_name);
        assert_eq!(parsed.stages_total, 3);
        assert!(!parsed.is_complete());
        assert_eq!(parsed.records, m.records);
    }

    #[test]
    fn checksums_are_stable() {
        assert_eq!(
            sha256_bytes(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(sha256_bytes(b"abc").len(), 64);
    }
}
