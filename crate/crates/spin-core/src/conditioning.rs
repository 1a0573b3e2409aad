use std::collections::BTreeSet;
use std::fmt;

use crate::error::SpinError;

/// Events to condition on: some vertices pinned to 0, some pinned to 1,
/// and blocks of vertices forced to share a spin.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AdmissibleCollection {
    pin0: Vec<usize>,
    pin1: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl AdmissibleCollection {
    /// Validates disjointness and block sizes. Sets are stored sorted.
    pub fn new(mut pin0: Vec<usize>, mut pin1: Vec<usize>, blocks: Vec<Vec<usize>>) -> Result<Self, SpinError> {
        pin0.sort_unstable();
        pin1.sort_unstable();
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if let Some(b) = blocks.iter().find(|b| b.len() < 2) {
            return Err(SpinError::InvalidConditioning(format!("equality block {b:?} has fewer than two vertices")));
        }
        let mut seen = BTreeSet::new();
        for &v in pin0.iter().chain(&pin1).chain(blocks.iter().flatten()) {
            if !seen.insert(v) {
                return Err(SpinError::InvalidConditioning(format!("vertex {v} appears in more than one set")));
            }
        }
        blocks.retain(|b| !b.is_empty());
        Ok(Self { pin0, pin1, blocks })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pins(pin0: Vec<usize>, pin1: Vec<usize>) -> Result<Self, SpinError> {
        Self::new(pin0, pin1, Vec::new())
    }

    pub fn pin0(&self) -> &[usize] {
        &self.pin0
    }

    pub fn pin1(&self) -> &[usize] {
        &self.pin1
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.pin0.is_empty() && self.pin1.is_empty() && self.blocks.is_empty()
    }

    /// The induction measure used when realising the collection one event
    /// at a time: pinned vertices plus (number of blocks).
    pub fn size(&self) -> usize {
        self.pin0.len() + self.pin1.len() + self.blocks.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pin0.iter().chain(&self.pin1).chain(self.blocks.iter().flatten()).copied()
    }

    pub fn check_range(&self, n: usize) -> Result<(), SpinError> {
        match self.vertices().find(|&v| v >= n) {
            Some(v) => Err(SpinError::VertexOutOfRange { vertex: v, n }),
            None => Ok(()),
        }
    }

    /// Does a full assignment satisfy every event?
    pub fn satisfied_by(&self, spin: impl Fn(usize) -> bool) -> bool {
        self.pin0.iter().all(|&v| !spin(v))
            && self.pin1.iter().all(|&v| spin(v))
            && self.blocks.iter().all(|b| b.iter().all(|&v| spin(v) == spin(b[0])))
    }

    /// Parses `pin0=1,2;pin1=;eq=3,4|5,6`. Every part is optional.
    pub fn parse(s: &str) -> Result<Self, SpinError> {
        let mut pin0 = Vec::new();
        let mut pin1 = Vec::new();
        let mut blocks = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) =
                part.split_once('=').ok_or_else(|| SpinError::Parse(format!("expected key=value in {part:?}")))?;
            match key.trim() {
                "pin0" => pin0 = parse_list(value)?,
                "pin1" => pin1 = parse_list(value)?,
                "eq" => {
                    blocks =
                        value.split('|').filter(|b| !b.trim().is_empty()).map(parse_list).collect::<Result<_, _>>()?
                }
                other => return Err(SpinError::Parse(format!("unknown conditioning key {other:?}"))),
            }
        }
        Self::new(pin0, pin1, blocks)
    }
}

pub fn parse_list(s: &str) -> Result<Vec<usize>, SpinError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| SpinError::Parse(format!("not a vertex: {t:?}"))))
        .collect()
}

impl fmt::Display for AdmissibleCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let blocks: Vec<String> = self.blocks.iter().map(|b| list(b)).collect();
        write!(f, "pin0={};pin1={};eq={}", list(&self.pin0), list(&self.pin1), blocks.join("|"))
    }
}
