//! Inverter topologies as data: switch counts, leg pairs, and per-level gate vectors.
//!
//! Two families are modeled. The conventional cascaded H-bridge uses one full
//! bridge (4 switches, 1 isolated source) per level pair. The modified family
//! keeps a single output H-bridge and inserts extra sources through two-switch
//! selector legs, so an L-level inverter needs `2*(L-1)/2 + 2` switches instead
//! of `4*(L-1)/2`.
//!
//! Switch indexing is 1-based at every I/O surface (`S1..Sn`, matching the
//! usual schematic labels) and 0-based internally.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conduction states for every switch of one topology, `states[i]` ↔ `S(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateVector(Vec<bool>);

impl GateVector {
    pub fn new(states: Vec<bool>) -> Self {
        GateVector(states)
    }

    /// All switches off.
    pub fn all_off(switch_count: usize) -> Self {
        GateVector(vec![false; switch_count])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        GateVector(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn states(&self) -> &[bool] {
        &self.0
    }

    /// Conduction state of 0-based switch `i`.
    pub fn is_on(&self, i: usize) -> bool {
        self.0[i]
    }

    /// Number of switches whose state differs between `self` and `other`.
    pub fn hamming(&self, other: &GateVector) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(other.0.iter())
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Copy with 0-based switch `i` toggled.
    pub fn with_toggled(&self, i: usize) -> GateVector {
        let mut states = self.0.clone();
        states[i] = !states[i];
        GateVector(states)
    }
}

impl fmt::Display for GateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(*s))?;
        }
        Ok(())
    }
}

/// Two switches of one leg; both conducting at once shorts a DC source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegPair {
    /// 0-based index of the high-side switch.
    pub high_switch: usize,
    /// 0-based index of the low-side switch.
    pub low_switch: usize,
}

impl LegPair {
    pub fn new(high_switch: usize, low_switch: usize) -> Self {
        assert_ne!(high_switch, low_switch, "a leg pair needs two distinct switches");
        LegPair {
            high_switch,
            low_switch,
        }
    }

    /// True when both switches of the leg conduct in `gates`.
    pub fn shorted_by(&self, gates: &GateVector) -> bool {
        gates.is_on(self.high_switch) && gates.is_on(self.low_switch)
    }
}

impl fmt::Display for LegPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}/S{}", self.high_switch + 1, self.low_switch + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Conventional,
    Modified,
}

impl TopologyKind {
    pub fn build(self, levels: u32) -> Result<Topology> {
        match self {
            TopologyKind::Conventional => build_conventional(levels),
            TopologyKind::Modified => build_modified(levels),
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyKind::Conventional => write!(f, "conventional"),
            TopologyKind::Modified => write!(f, "modified"),
        }
    }
}

/// Structural description of one inverter: sources, switches, leg pairs, and
/// the map from output level index to gate vector.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    kind: TopologyKind,
    levels: u32,
    source_count: u32,
    switch_count: usize,
    leg_pairs: Vec<LegPair>,
    level_map: BTreeMap<i32, GateVector>,
}

impl Topology {
    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn source_count(&self) -> u32 {
        self.source_count
    }

    pub fn switch_count(&self) -> usize {
        self.switch_count
    }

    pub fn leg_pairs(&self) -> &[LegPair] {
        &self.leg_pairs
    }

    /// Highest level index `k = (levels - 1) / 2`; level indices run `-k..=k`.
    pub fn max_level(&self) -> i32 {
        ((self.levels - 1) / 2) as i32
    }

    pub fn level_map(&self) -> &BTreeMap<i32, GateVector> {
        &self.level_map
    }

    /// Gate vector for one level index, if it exists.
    pub fn gates_for(&self, level: i32) -> Option<&GateVector> {
        self.level_map.get(&level)
    }

    /// A switching table over this topology, rows ordered `+k` down to `-k`.
    pub fn switching_table(&self) -> SwitchingTable {
        let rows = self
            .level_map
            .iter()
            .rev()
            .map(|(k, g)| (*k, g.clone()))
            .collect();
        SwitchingTable {
            topology: self.clone(),
            rows,
        }
    }
}

fn check_levels(levels: u32) -> Result<u32> {
    if levels < 3 || levels.is_multiple_of(2) {
        return Err(Error::UnsupportedLevelCount { levels });
    }
    Ok((levels - 1) / 2)
}

/// Build the conventional cascaded H-bridge topology for an odd level count.
///
/// Bridge `b` owns switches `S(4b+1)..S(4b+4)`. A bridge contributes +Vdc
/// through `(1,1,0,0)`, -Vdc through `(0,0,1,1)` and bypasses through
/// `(0,1,0,1)`; level `m` drives the first `|m|` bridges at the sign of `m`
/// and bypasses the rest. Level 0 is all-off.
pub fn build_conventional(levels: u32) -> Result<Topology> {
    let k = check_levels(levels)?;
    let bridges = k as usize;
    let switch_count = 4 * bridges;

    const POS: [bool; 4] = [true, true, false, false];
    const NEG: [bool; 4] = [false, false, true, true];
    const BYPASS: [bool; 4] = [false, true, false, true];

    let mut level_map = BTreeMap::new();
    for m in -(k as i32)..=(k as i32) {
        let mut states = Vec::with_capacity(switch_count);
        for b in 0..bridges {
            let cell: &[bool; 4] = if m == 0 {
                &[false; 4]
            } else if b < m.unsigned_abs() as usize {
                if m > 0 {
                    &POS
                } else {
                    &NEG
                }
            } else {
                &BYPASS
            };
            states.extend_from_slice(cell);
        }
        level_map.insert(m, GateVector::new(states));
    }

    // Legs per bridge: (S1,S4) and (S3,S2) in local numbering.
    let leg_pairs = (0..bridges)
        .flat_map(|b| {
            [
                LegPair::new(4 * b, 4 * b + 3),
                LegPair::new(4 * b + 2, 4 * b + 1),
            ]
        })
        .collect();

    let topology = Topology {
        kind: TopologyKind::Conventional,
        levels,
        source_count: k,
        switch_count,
        leg_pairs,
        level_map,
    };
    debug_assert!(validate_table(&topology.switching_table()).is_empty());
    Ok(topology)
}

/// Build the modified topology for an odd level count.
///
/// Switches `S1..S4` form the output H-bridge setting polarity; each extra
/// source `j` (beyond the first) hangs behind a selector leg
/// `(S(2j+3), S(2j+4))` that either inserts it (`1,0`) or bypasses it (`0,1`).
/// Level `|m|` inserts the first `|m| - 1` sources. Level 0 is all-off.
pub fn build_modified(levels: u32) -> Result<Topology> {
    let k = check_levels(levels)?;
    let selectors = (k - 1) as usize;
    let switch_count = 4 + 2 * selectors;

    let mut level_map = BTreeMap::new();
    for m in -(k as i32)..=(k as i32) {
        let mut states = Vec::with_capacity(switch_count);
        if m == 0 {
            states.resize(switch_count, false);
        } else {
            let bridge: [bool; 4] = if m > 0 {
                [true, true, false, false]
            } else {
                [false, false, true, true]
            };
            states.extend_from_slice(&bridge);
            let inserted = (m.unsigned_abs() - 1) as usize;
            for j in 0..selectors {
                if j < inserted {
                    states.extend_from_slice(&[true, false]);
                } else {
                    states.extend_from_slice(&[false, true]);
                }
            }
        }
        level_map.insert(m, GateVector::new(states));
    }

    let mut leg_pairs = vec![LegPair::new(0, 3), LegPair::new(2, 1)];
    for j in 0..selectors {
        leg_pairs.push(LegPair::new(4 + 2 * j, 5 + 2 * j));
    }

    let topology = Topology {
        kind: TopologyKind::Modified,
        levels,
        source_count: k,
        switch_count,
        leg_pairs,
        level_map,
    };
    debug_assert!(validate_table(&topology.switching_table()).is_empty());
    Ok(topology)
}

/// Number of switching devices in the topology.
pub fn count_switches(topology: &Topology) -> usize {
    topology.switch_count()
}

/// One shoot-through finding: which level's row shorts which leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub level: i32,
    pub pair: LegPair,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {}: leg {} shorted", self.level, self.pair)
    }
}

/// Check every row of a table against the topology's leg pairs.
///
/// Returns one [`Violation`] per (row, leg pair) where both switches of the
/// pair conduct; empty means the table is safe.
pub fn validate_table(table: &SwitchingTable) -> Vec<Violation> {
    let mut violations = Vec::new();
    for (level, gates) in table.rows() {
        for pair in table.topology().leg_pairs() {
            if pair.shorted_by(gates) {
                violations.push(Violation {
                    level: *level,
                    pair: *pair,
                });
            }
        }
    }
    violations
}

/// Inverse lookup: the unique level whose row equals `gates`, or `None`.
pub fn level_of(table: &SwitchingTable, gates: &GateVector) -> Option<i32> {
    table.level_of(gates)
}

/// Per-level gate vectors bound to their topology.
///
/// Rows keep their construction (or import) order; [`Topology::switching_table`]
/// orders them `+k` down to `-k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingTable {
    topology: Topology,
    rows: Vec<(i32, GateVector)>,
}

impl SwitchingTable {
    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn rows(&self) -> &[(i32, GateVector)] {
        &self.rows
    }

    pub fn switch_count(&self) -> usize {
        self.topology.switch_count()
    }

    pub fn gates_for(&self, level: i32) -> Option<&GateVector> {
        self.rows.iter().find(|(k, _)| *k == level).map(|(_, g)| g)
    }

    pub fn level_of(&self, gates: &GateVector) -> Option<i32> {
        self.rows.iter().find(|(_, g)| g == gates).map(|(k, _)| *k)
    }

    /// Replace the row for `level` with an arbitrary gate vector.
    ///
    /// Intended for constructing deliberately corrupted tables in validation
    /// tests; the result may fail [`validate_table`].
    pub fn with_row(&self, level: i32, gates: GateVector) -> Result<SwitchingTable> {
        if gates.len() != self.switch_count() {
            return Err(Error::TableFormat(format!(
                "row has {} cells, topology has {} switches",
                gates.len(),
                self.switch_count()
            )));
        }
        let mut rows = self.rows.clone();
        let slot = rows
            .iter_mut()
            .find(|(k, _)| *k == level)
            .ok_or(Error::UnmappedLevel { sample: 0, level })?;
        slot.1 = gates;
        Ok(SwitchingTable {
            topology: self.topology.clone(),
            rows,
        })
    }

    /// CSV form: header `level,S1,...,Sn`, one row per level, 0/1 cells.
    /// Rows are written in table order and re-import preserves it, so
    /// export -> import -> export is byte-identical.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level");
        for s in 1..=self.switch_count() {
            out.push_str(&format!(",S{s}"));
        }
        out.push('\n');
        for (level, gates) in &self.rows {
            out.push_str(&format!("{level},{gates}\n"));
        }
        out
    }

    /// Parse the CSV form against a topology, checking the header, cell
    /// values, and that the level set is exactly `-k..=k` with no repeats.
    pub fn from_csv(csv: &str, topology: Topology) -> Result<SwitchingTable> {
        let n = topology.switch_count();
        let mut lines = csv.lines();
        let header = lines.next().ok_or_else(|| Error::TableFormat("empty input".into()))?;
        let expected_header: String = std::iter::once("level".to_string())
            .chain((1..=n).map(|s| format!("S{s}")))
            .collect::<Vec<_>>()
            .join(",");
        if header != expected_header {
            return Err(Error::TableFormat(format!(
                "header '{header}' does not match expected '{expected_header}'"
            )));
        }

        let mut rows = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let level: i32 = fields
                .next()
                .unwrap()
                .parse()
                .map_err(|_| Error::TableFormat(format!("line {}: bad level index", lineno + 2)))?;
            let mut states = Vec::with_capacity(n);
            for field in fields {
                match field {
                    "0" => states.push(false),
                    "1" => states.push(true),
                    other => {
                        return Err(Error::TableFormat(format!(
                            "line {}: cell '{other}' is not 0 or 1",
                            lineno + 2
                        )))
                    }
                }
            }
            if states.len() != n {
                return Err(Error::TableFormat(format!(
                    "line {}: {} cells, expected {}",
                    lineno + 2,
                    states.len(),
                    n
                )));
            }
            rows.push((level, GateVector::new(states)));
        }

        let k = topology.max_level();
        let mut seen: Vec<i32> = rows.iter().map(|(l, _)| *l).collect();
        seen.sort_unstable();
        let expected: Vec<i32> = (-k..=k).collect();
        if seen != expected {
            return Err(Error::TableFormat(format!(
                "level set {seen:?} is not exactly -{k}..={k}"
            )));
        }

        Ok(SwitchingTable { topology, rows })
    }
}
