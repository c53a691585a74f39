//! Schedule config files: line-oriented `key = value` stanzas, one per
//! stage, under a header naming the target class parameters.

use thiserror::Error;

use crate::arrowing::ArrowSpec;
use crate::search::AlphaMode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("line {0}: expected `key = value`, got `{1}`")]
    BadLine(usize, String),
    #[error("line {0}: unknown key `{1}`")]
    UnknownKey(usize, String),
    #[error("line {0}: bad value for `{1}`: `{2}`")]
    BadValue(usize, String, String),
    #[error("missing header key `{0}`")]
    MissingHeader(&'static str),
    #[error("stage {0}: missing key `{1}`")]
    MissingStageKey(String, &'static str),
    #[error("stage id `{0}` appears twice")]
    DuplicateStage(String),
    #[error("stage id `{0}` contains characters outside [A-Za-z0-9._-]")]
    BadStageId(String),
    #[error("stage {stage}: references unknown or later stage `{input}`")]
    BadInput { stage: String, input: String },
    #[error("stage {stage}: base stages take no input")]
    BaseWithInput { stage: String },
    #[error("stage {stage}: {detail}")]
    BadStage { stage: String, detail: String },
    #[error("header: {0}")]
    BadHeader(String),
    #[error("schedule has no stages")]
    Empty,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum StageKind {
    /// Exhaustive determination of the smallest `(+K_t)` seed class.
    Base,
    /// Independent-vertex extension producing maximal graphs.
    Extend,
    /// Edge-removal closure producing the `(+K_t)`-graphs of a class.
    Closure,
}

impl StageKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StageKind::Base => "base",
            StageKind::Extend => "extend",
            StageKind::Closure => "closure",
        }
    }
}

/// One extension-or-closure step of a staged run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageSpec {
    pub id: String,
    /// Class name, e.g. `wHn(5)(6)(7)(10)`; shared by the extend stage and
    /// the closure stage of the same class.
    pub label: String,
    pub kind: StageKind,
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    /// Independent vertices added (extend stages).
    pub k: usize,
    /// `(+K_t)` target (base and closure stages).
    pub plus_t: usize,
    pub alpha_mode: AlphaMode,
    pub input: Option<String>,
    /// Heavy stages excluded from default runs.
    pub extended: bool,
}

impl StageSpec {
    pub fn spec(&self) -> ArrowSpec {
        ArrowSpec {
            m: self.m,
            p: self.p,
        }
    }
}

/// An ordered chain of stages targeting emptiness of one class.
#[derive(Clone, Debug)]
pub struct Schedule {
    pub name: String,
    /// Target arrowing level of the final class.
    pub m: usize,
    pub p: usize,
    pub q: usize,
    /// Vertex count of the final class.
    pub final_n: usize,
    pub stages: Vec<StageSpec>,
}

impl Schedule {
    pub fn parse(text: &str) -> Result<Schedule, ScheduleError> {
        let mut name = None;
        let mut header: [Option<usize>; 4] = [None; 4]; // m p q final_n

        struct Raw {
            id: String,
            line: usize,
            label: Option<String>,
            kind: Option<StageKind>,
            m: Option<usize>,
            n: Option<usize>,
            k: usize,
            plus_t: usize,
            alpha_mode: AlphaMode,
            input: Option<String>,
            extended: bool,
        }
        let mut raws: Vec<Raw> = Vec::new();

        for (i, raw_line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ScheduleError::BadLine(lineno, line.to_string()));
            };
            let key = key.trim();
            let value = value.trim();
            let bad = || ScheduleError::BadValue(lineno, key.to_string(), value.to_string());
            let num = |v: &str| v.parse::<usize>().map_err(|_| bad());

            if let Some(cur) = raws.last_mut() {
                if key != "stage" {
                    match key {
                        "label" => cur.label = Some(value.to_string()),
                        "kind" => {
                            cur.kind = Some(match value {
                                "base" => StageKind::Base,
                                "extend" => StageKind::Extend,
                                "closure" => StageKind::Closure,
                                _ => return Err(bad()),
                            })
                        }
                        "m" => cur.m = Some(num(value)?),
                        "n" => cur.n = Some(num(value)?),
                        "k" => cur.k = num(value)?,
                        "plus_t" => cur.plus_t = num(value)?,
                        "alpha_mode" => {
                            cur.alpha_mode = match value {
                                "unrestricted" => AlphaMode::Unrestricted,
                                "exactly_two" => AlphaMode::ExactlyTwo,
                                _ => return Err(bad()),
                            }
                        }
                        "input" => {
                            cur.input = match value {
                                "-" | "" => None,
                                v => Some(v.to_string()),
                            }
                        }
                        "extended" => {
                            cur.extended = match value {
                                "true" => true,
                                "false" => false,
                                _ => return Err(bad()),
                            }
                        }
                        _ => return Err(ScheduleError::UnknownKey(lineno, key.to_string())),
                    }
                    continue;
                }
            }

            match key {
                "stage" => raws.push(Raw {
                    id: value.to_string(),
                    line: lineno,
                    label: None,
                    kind: None,
                    m: None,
                    n: None,
                    k: 0,
                    plus_t: 0,
                    alpha_mode: AlphaMode::Unrestricted,
                    input: None,
                    extended: false,
                }),
                "schedule" => name = Some(value.to_string()),
                "m" => header[0] = Some(num(value)?),
                "p" => header[1] = Some(num(value)?),
                "q" => header[2] = Some(num(value)?),
                "final_n" => header[3] = Some(num(value)?),
                _ => return Err(ScheduleError::UnknownKey(lineno, key.to_string())),
            }
        }

        let name = name.ok_or(ScheduleError::MissingHeader("schedule"))?;
        let m = header[0].ok_or(ScheduleError::MissingHeader("m"))?;
        let p = header[1].ok_or(ScheduleError::MissingHeader("p"))?;
        let q = header[2].ok_or(ScheduleError::MissingHeader("q"))?;
        let final_n = header[3].ok_or(ScheduleError::MissingHeader("final_n"))?;

        let mut stages = Vec::with_capacity(raws.len());
        for raw in raws {
            let id = raw.id.clone();
            let missing = |k: &'static str| ScheduleError::MissingStageKey(id.clone(), k);
            let _ = raw.line;
            stages.push(StageSpec {
                id: raw.id,
                label: raw.label.ok_or_else(|| missing("label"))?,
                kind: raw.kind.ok_or_else(|| missing("kind"))?,
                m: raw.m.ok_or_else(|| missing("m"))?,
                p,
                q,
                n: raw.n.ok_or_else(|| missing("n"))?,
                k: raw.k,
                plus_t: raw.plus_t,
                alpha_mode: raw.alpha_mode,
                input: raw.input,
                extended: raw.extended,
            });
        }

        let schedule = Schedule {
            name,
            m,
            p,
            q,
            final_n,
            stages,
        };
        schedule.validate()?;
        Ok(schedule)
    }

    fn validate(&self) -> Result<(), ScheduleError> {
        if self.stages.is_empty() {
            return Err(ScheduleError::Empty);
        }
        let target = ArrowSpec::new(self.m, self.p)
            .map_err(|e| ScheduleError::BadHeader(e.to_string()))?;
        target
            .validate_class_target(self.q)
            .map_err(|e| ScheduleError::BadHeader(e.to_string()))?;

        let mut seen: Vec<&str> = Vec::new();
        for stage in &self.stages {
            let fail = |detail: String| ScheduleError::BadStage {
                stage: stage.id.clone(),
                detail,
            };
            if stage.id.is_empty()
                || !stage
                    .id
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || "._-".contains(c))
            {
                return Err(ScheduleError::BadStageId(stage.id.clone()));
            }
            if seen.contains(&stage.id.as_str()) {
                return Err(ScheduleError::DuplicateStage(stage.id.clone()));
            }
            ArrowSpec::new(stage.m, stage.p)
                .map_err(|e| fail(e.to_string()))?;
            let input_spec = stage
                .input
                .as_deref()
                .map(|input| {
                    self.stages
                        .iter()
                        .take_while(|s| s.id != stage.id)
                        .find(|s| s.id == input)
                        .ok_or_else(|| ScheduleError::BadInput {
                            stage: stage.id.clone(),
                            input: input.to_string(),
                        })
                })
                .transpose()?;

            match stage.kind {
                StageKind::Base => {
                    if stage.input.is_some() {
                        return Err(ScheduleError::BaseWithInput {
                            stage: stage.id.clone(),
                        });
                    }
                    if stage.plus_t < 2 {
                        return Err(fail("base stages need plus_t >= 2".into()));
                    }
                }
                StageKind::Extend => {
                    let input = input_spec.ok_or_else(|| fail("extend stages need an input".into()))?;
                    if stage.k < 1 {
                        return Err(fail("extend stages need k >= 1".into()));
                    }
                    if stage.alpha_mode == AlphaMode::ExactlyTwo && stage.k != 2 {
                        return Err(fail(format!(
                            "exactly-two extension requires k = 2, got {}",
                            stage.k
                        )));
                    }
                    if input.n + stage.k != stage.n {
                        return Err(fail(format!(
                            "input has n = {}, expected n - k = {}",
                            input.n,
                            stage.n - stage.k.min(stage.n)
                        )));
                    }
                    if input.m + 1 != stage.m {
                        return Err(fail(format!(
                            "input has m = {}, expected m - 1 = {}",
                            input.m,
                            stage.m - 1
                        )));
                    }
                }
                StageKind::Closure => {
                    let input = input_spec.ok_or_else(|| fail("closure stages need an input".into()))?;
                    if stage.plus_t < 2 {
                        return Err(fail("closure stages need plus_t >= 2".into()));
                    }
                    if input.kind != StageKind::Extend {
                        return Err(fail("closure stages consume an extend stage".into()));
                    }
                    if input.n != stage.n || input.m != stage.m {
                        return Err(fail(format!(
                            "closure must match its input class, input has m = {}, n = {}",
                            input.m, input.n
                        )));
                    }
                }
            }
            seen.push(&stage.id);
        }
        Ok(())
    }

    pub fn stage(&self, id: &str) -> Option<&StageSpec> {
        self.stages.iter().find(|s| s.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample two-step schedule
schedule = demo
m = 8
p = 6
q = 7
final_n = 17

stage = a0-base
label = wHn(3)(6)(7)(6)
kind = base
m = 3
n = 6
plus_t = 6

stage = a1-max
label = wHn(4)(6)(7)(8)
kind = extend
input = a0-base
m = 4
n = 8
k = 2

stage = a1-plus
label = wHn(4)(6)(7)(8)
kind = closure
input = a1-max
m = 4
n = 8
plus_t = 6
extended = false
";

    #[test]
    fn parses_the_sample() {
        let s = Schedule::parse(SAMPLE).unwrap();
        assert_eq!(s.name, "demo");
        assert_eq!((s.m, s.p, s.q, s.final_n), (8, 6, 7, 17));
        assert_eq!(s.stages.len(), 3);
        assert_eq!(s.stages[0].kind, StageKind::Base);
        assert_eq!(s.stages[1].k, 2);
        assert_eq!(s.stages[1].input.as_deref(), Some("a0-base"));
        assert_eq!(s.stages[2].plus_t, 6);
        assert_eq!(s.stages[2].alpha_mode, AlphaMode::Unrestricted);
    }

    #[test]
    fn rejects_broken_schedules() {
        // extend must consume the class one level and k vertices below
        let bad = SAMPLE.replace("k = 2", "k = 3");
        assert!(matches!(
            Schedule::parse(&bad),
            Err(ScheduleError::BadStage { .. })
        ));

        let bad = SAMPLE.replace("input = a0-base", "input = nope");
        assert!(matches!(
            Schedule::parse(&bad),
            Err(ScheduleError::BadInput { .. })
        ));

        let bad = SAMPLE.replace("schedule = demo\n", "");
        assert!(matches!(
            Schedule::parse(&bad),
            Err(ScheduleError::MissingHeader("schedule"))
        ));

        // q = m-1 classes only exist for m >= p+2
        let bad = SAMPLE.replace("m = 8", "m = 7").replace("q = 7", "q = 6");
        assert!(matches!(Schedule::parse(&bad), Err(ScheduleError::BadHeader(_))));

        let bad = format!("{SAMPLE}\nstage = a1-max\nlabel = x\nkind = base\nm = 3\nn = 6\nplus_t = 6\n");
        assert!(matches!(
            Schedule::parse(&bad),
            Err(ScheduleError::DuplicateStage(_))
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let s = Schedule::parse(SAMPLE).unwrap();
        let stripped: String = SAMPLE
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        let t = Schedule::parse(&stripped).unwrap();
        assert_eq!(s.stages, t.stages);
    }
}
