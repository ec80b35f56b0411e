//! Readers for the item-stream, ranking-stream and margin-table files.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context};
use votesketch::Profile;

pub fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_profile(path: &Path) -> anyhow::Result<Profile> {
    Ok(Profile::parse(&read_text(path)?)?)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Item tokens mapped to dense ids in order of first appearance.
#[derive(Debug, Clone, Default)]
pub struct ItemStream {
    pub names: Vec<String>,
    pub items: Vec<u64>,
    index: HashMap<String, u64>,
}

impl ItemStream {
    /// Stream whose first `universe` ids are the tokens `0, 1, ...`.
    pub fn with_universe(universe: u64) -> Self {
        let mut s = ItemStream::default();
        for i in 0..universe {
            s.intern(&i.to_string());
        }
        s
    }

    pub fn intern(&mut self, token: &str) -> u64 {
        if let Some(&id) = self.index.get(token) {
            return id;
        }
        let id = self.names.len() as u64;
        self.names.push(token.to_string());
        self.index.insert(token.to_string(), id);
        id
    }

    pub fn push(&mut self, token: &str) {
        let id = self.intern(token);
        self.items.push(id);
    }

    /// Ids `0..universe` named by their decimal value.
    pub fn from_ids(items: Vec<u64>, universe: u64) -> Self {
        let mut s = ItemStream::with_universe(universe);
        s.items = items;
        s
    }

    pub fn parse(text: &str, universe: Option<u64>) -> anyhow::Result<Self> {
        let mut s = ItemStream::with_universe(universe.unwrap_or(0));
        for (line, token) in content_lines(text) {
            if token.split_whitespace().count() != 1 {
                bail!("line {line}: expected one item token, got `{token}`");
            }
            s.push(token);
        }
        if let Some(u) = universe {
            if s.names.len() as u64 > u {
                bail!("stream has items outside the universe 0..{u}: `{}`", s.names[u as usize]);
            }
        }
        Ok(s)
    }

    pub fn domain(&self) -> u64 {
        (self.names.len() as u64).max(1)
    }

    pub fn counts(&self) -> Vec<u64> {
        let mut c = vec![0; self.names.len()];
        for &x in &self.items {
            c[x as usize] += 1;
        }
        c
    }

    pub fn emit(&self) -> String {
        self.items.iter().map(|&x| format!("{}\n", self.names[x as usize])).collect()
    }
}

/// Complete rankings over a fixed candidate list.
#[derive(Debug, Clone)]
pub struct RankingStream {
    pub candidates: Vec<String>,
    pub rankings: Vec<Vec<usize>>,
}

impl RankingStream {
    /// Candidates are indexed in the order of the first ranking.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut candidates: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut rankings = Vec::new();
        for (line, l) in content_lines(text) {
            let names: Vec<&str> = l.split('>').map(str::trim).collect();
            if candidates.is_empty() {
                for (i, n) in names.iter().enumerate() {
                    if n.is_empty() || index.insert(n.to_string(), i).is_some() {
                        bail!("line {line}: malformed ranking `{l}`");
                    }
                    candidates.push(n.to_string());
                }
            }
            let mut seen = vec![false; candidates.len()];
            let mut r = Vec::with_capacity(candidates.len());
            for n in &names {
                let &c = index.get(*n).with_context(|| format!("line {line}: unknown candidate `{n}`"))?;
                if std::mem::replace(&mut seen[c], true) {
                    bail!("line {line}: candidate `{n}` appears twice");
                }
                r.push(c);
            }
            if r.len() != candidates.len() {
                bail!("line {line}: ranking lists {} of {} candidates", r.len(), candidates.len());
            }
            rankings.push(r);
        }
        if candidates.len() < 2 {
            bail!("ranking stream needs at least two candidates");
        }
        Ok(RankingStream { candidates, rankings })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for r in &self.rankings {
            let names: Vec<&str> = r.iter().map(|&c| self.candidates[c].as_str()).collect();
            out.push_str(&names.join(">"));
            out.push('\n');
        }
        out
    }

    pub fn borda_scores(&self) -> Vec<f64> {
        let n = self.candidates.len();
        let mut s = vec![0.0; n];
        for r in &self.rankings {
            for (pos, &c) in r.iter().enumerate() {
                s[c] += (n - 1 - pos) as f64;
            }
        }
        s
    }

    pub fn maximin_scores(&self) -> Vec<f64> {
        let n = self.candidates.len();
        let mut d = vec![vec![0i64; n]; n];
        let mut pos = vec![0; n];
        for r in &self.rankings {
            for (i, &c) in r.iter().enumerate() {
                pos[c] = i;
            }
            for x in 0..n {
                for y in 0..n {
                    if pos[x] < pos[y] {
                        d[x][y] += 1;
                    } else if x != y {
                        d[x][y] -= 1;
                    }
                }
            }
        }
        (0..n).map(|x| (0..n).filter(|&y| y != x).map(|y| d[x][y]).min().unwrap_or(0) as f64).collect()
    }
}

/// Margin table: a header line of candidate names, then one row of integers per candidate.
pub fn parse_margins(text: &str) -> anyhow::Result<(Vec<String>, Vec<Vec<i64>>)> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().context("empty margin file")?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (line, l) in lines {
        let row = l
            .split(',')
            .map(|v| v.trim().parse::<i64>().with_context(|| format!("line {line}: bad margin `{v}`")))
            .collect::<anyhow::Result<Vec<_>>>()?;
        if row.len() != names.len() {
            bail!("line {line}: expected {} margins, got {}", names.len(), row.len());
        }
        rows.push(row);
    }
    if rows.len() != names.len() {
        bail!("expected {} rows of margins, got {}", names.len(), rows.len());
    }
    Ok((names, rows))
}
