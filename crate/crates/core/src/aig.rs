// SPDX-License-Identifier: Apache-2.0

//! Combinational and-inverter graphs and AIGER I/O.
//!
//! Node 0 is constant false, nodes `1..=num_pis` are primary inputs and the
//! remaining nodes are two-input ANDs whose fanins always have smaller ids.
//! Edges are [`Lit`]s: a node id plus a complement flag.

use std::fmt;
use std::io::{self, Read, Write};

use rand::Rng;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub const FALSE: Lit = Lit(0);
    pub const TRUE: Lit = Lit(1);

    #[inline]
    pub fn new(node: usize, complemented: bool) -> Self {
        Lit((node as u32) << 1 | complemented as u32)
    }

    #[inline]
    pub fn node(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_complemented(self) -> bool {
        self.0 & 1 != 0
    }

    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn negate_if(self, c: bool) -> Self {
        Lit(self.0 ^ c as u32)
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_complemented() {
            write!(f, "!{}", self.node())
        } else {
            write!(f, "{}", self.node())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AndNode {
    pub fanin0: Lit,
    pub fanin1: Lit,
}

/// Counts from the file header, kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AigerHeader {
    pub max_var: usize,
    pub inputs: usize,
    pub latches: usize,
    pub outputs: usize,
    pub ands: usize,
}

#[derive(Debug, Error)]
pub enum AigError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("sequential AIGs are not supported ({0} latches)")]
    Latches(usize),
    #[error("literal {0} is used but never defined")]
    Undefined(u32),
    #[error("combinational cycle through literal {0}")]
    Cycle(u32),
}

fn parse_err(line: usize, msg: impl Into<String>) -> AigError {
    AigError::Parse {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Aig {
    num_pis: usize,
    ands: Vec<AndNode>,
    pos: Vec<Lit>,
    pub pi_names: Vec<Option<String>>,
    pub po_names: Vec<Option<String>>,
    pub comments: Vec<String>,
    pub header: AigerHeader,
}

impl Aig {
    pub fn new(num_pis: usize) -> Self {
        Self {
            num_pis,
            pi_names: vec![None; num_pis],
            ..Default::default()
        }
    }

    pub fn num_pis(&self) -> usize {
        self.num_pis
    }

    pub fn num_pos(&self) -> usize {
        self.pos.len()
    }

    pub fn num_ands(&self) -> usize {
        self.ands.len()
    }

    /// Constant, PIs and ANDs.
    pub fn num_nodes(&self) -> usize {
        1 + self.num_pis + self.ands.len()
    }

    pub fn pi(&self, i: usize) -> Lit {
        assert!(i < self.num_pis);
        Lit::new(1 + i, false)
    }

    pub fn pos(&self) -> &[Lit] {
        &self.pos
    }

    #[inline]
    pub fn is_pi(&self, node: usize) -> bool {
        (1..=self.num_pis).contains(&node)
    }

    #[inline]
    pub fn is_and(&self, node: usize) -> bool {
        node > self.num_pis && node < self.num_nodes()
    }

    #[inline]
    pub fn and(&self, node: usize) -> AndNode {
        self.ands[node - 1 - self.num_pis]
    }

    pub fn and_nodes(&self) -> std::ops::Range<usize> {
        1 + self.num_pis..self.num_nodes()
    }

    /// Adds `a AND b`, folding constant fanins.
    pub fn add_and(&mut self, a: Lit, b: Lit) -> Lit {
        if a == Lit::FALSE || b == Lit::FALSE {
            return Lit::FALSE;
        }
        if a == Lit::TRUE {
            return b;
        }
        if b == Lit::TRUE {
            return a;
        }
        assert!(a.node() < self.num_nodes() && b.node() < self.num_nodes());
        self.ands.push(AndNode { fanin0: a, fanin1: b });
        Lit::new(self.num_nodes() - 1, false)
    }

    pub fn add_po(&mut self, lit: Lit, name: Option<String>) {
        assert!(lit.node() < self.num_nodes());
        self.pos.push(lit);
        self.po_names.push(name);
    }

    pub fn pi_name(&self, i: usize) -> String {
        self.pi_names
            .get(i)
            .cloned()
            .flatten()
            .unwrap_or_else(|| format!("pi{i}"))
    }

    pub fn po_name(&self, i: usize) -> String {
        self.po_names
            .get(i)
            .cloned()
            .flatten()
            .unwrap_or_else(|| format!("po{i}"))
    }

    /// Unit-delay level of every node; constant and PIs are at level 0.
    pub fn topo_levels(&self) -> Vec<u32> {
        let mut level = vec![0u32; self.num_nodes()];
        for n in self.and_nodes() {
            let a = self.and(n);
            level[n] = 1 + level[a.fanin0.node()].max(level[a.fanin1.node()]);
        }
        level
    }

    /// Largest PO level.
    pub fn depth(&self) -> u32 {
        let level = self.topo_levels();
        self.pos.iter().map(|l| level[l.node()]).max().unwrap_or(0)
    }

    /// Number of fanouts of every node, counting PO references.
    pub fn fanout_counts(&self) -> Vec<u32> {
        let mut refs = vec![0u32; self.num_nodes()];
        for n in self.and_nodes() {
            let a = self.and(n);
            refs[a.fanin0.node()] += 1;
            refs[a.fanin1.node()] += 1;
        }
        for po in &self.pos {
            refs[po.node()] += 1;
        }
        refs
    }

    /// Bit-parallel simulation: `inputs[i]` is the pattern word of PI `i`.
    /// Returns one word per node.
    pub fn simulate(&self, inputs: &[u64]) -> Vec<u64> {
        assert_eq!(inputs.len(), self.num_pis);
        let mut val = Vec::with_capacity(self.num_nodes());
        val.push(0u64);
        val.extend_from_slice(inputs);
        let lit_val = |val: &[u64], l: Lit| val[l.node()] ^ (0u64.wrapping_sub(l.is_complemented() as u64));
        for n in self.and_nodes() {
            let a = self.and(n);
            let v = lit_val(&val, a.fanin0) & lit_val(&val, a.fanin1);
            val.push(v);
        }
        val
    }

    /// PO words for the given PI words.
    pub fn simulate_pos(&self, inputs: &[u64]) -> Vec<u64> {
        let val = self.simulate(inputs);
        self.pos
            .iter()
            .map(|l| val[l.node()] ^ 0u64.wrapping_sub(l.is_complemented() as u64))
            .collect()
    }

    /// A random AIG: each AND picks two distinct earlier nodes with random
    /// polarities; POs are drawn from the last nodes.
    pub fn random<R: Rng + ?Sized>(num_pis: usize, num_ands: usize, num_pos: usize, rng: &mut R) -> Self {
        assert!(num_pis >= 2);
        let mut aig = Aig::new(num_pis);
        for _ in 0..num_ands {
            let n = aig.num_nodes();
            let a = rng.gen_range(1..n);
            let mut b = rng.gen_range(1..n - 1);
            if b >= a {
                b += 1;
            }
            aig.add_and(Lit::new(a, rng.gen()), Lit::new(b, rng.gen()));
        }
        let n = aig.num_nodes();
        for _ in 0..num_pos {
            let lo = n.saturating_sub(num_pos.max(8)).max(1);
            let node = rng.gen_range(lo..n);
            aig.add_po(Lit::new(node, rng.gen()), None);
        }
        aig.header = AigerHeader {
            max_var: n - 1,
            inputs: num_pis,
            latches: 0,
            outputs: num_pos,
            ands: aig.num_ands(),
        };
        aig
    }

    /// Parses ASCII (`aag`) or binary (`aig`) AIGER.
    pub fn parse<R: Read>(mut input: R) -> Result<Self, AigError> {
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes)?;
        Self::parse_bytes(&bytes)
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self, AigError> {
        let f = std::fs::File::open(path)?;
        Self::parse(io::BufReader::new(f))
    }

    pub fn parse_bytes(bytes: &[u8]) -> Result<Self, AigError> {
        let header_end = bytes.iter().position(|&b| b == b'\n').unwrap_or(bytes.len());
        let header_line = std::str::from_utf8(&bytes[..header_end]).map_err(|_| parse_err(1, "header is not UTF-8"))?;
        let fields: Vec<&str> = header_line.split_whitespace().collect();
        let binary = match fields.first() {
            Some(&"aag") => false,
            Some(&"aig") => true,
            _ => return Err(parse_err(1, "expected 'aag' or 'aig' header")),
        };
        if fields.len() < 6 {
            return Err(parse_err(1, "header needs M I L O A"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(1, format!("bad header count {s:?}")));
        let header = AigerHeader {
            max_var: num(fields[1])?,
            inputs: num(fields[2])?,
            latches: num(fields[3])?,
            outputs: num(fields[4])?,
            ands: num(fields[5])?,
        };
        if fields.len() > 6 && fields[6..].iter().any(|f| num(f).is_ok_and(|v| v > 0)) {
            return Err(parse_err(1, "bad-state, constraint, justice and fairness sections are not supported"));
        }
        if header.latches > 0 {
            return Err(AigError::Latches(header.latches));
        }
        if header.max_var < header.inputs + header.ands {
            return Err(parse_err(1, "M is smaller than I + A"));
        }
        let body = &bytes[(header_end + 1).min(bytes.len())..];
        let mut raw = RawAiger {
            header,
            inputs: Vec::new(),
            outputs: Vec::new(),
            ands: Vec::new(),
        };
        let rest = if binary {
            raw.read_binary(body)?
        } else {
            raw.read_ascii(body)?
        };
        let mut aig = raw.build()?;
        aig.read_symbols(rest, header_body_lines(binary, &header))?;
        Ok(aig)
    }

    fn read_symbols(&mut self, rest: &[u8], first_line: usize) -> Result<(), AigError> {
        let mut in_comment = false;
        for (i, line) in rest.split(|&b| b == b'\n').enumerate() {
            let line = String::from_utf8_lossy(line);
            let line = line.trim_end_matches('\r');
            if in_comment {
                self.comments.push(line.to_string());
                continue;
            }
            if line.is_empty() {
                continue;
            }
            if line == "c" {
                in_comment = true;
                continue;
            }
            let lineno = first_line + i;
            let (kind, rest) = line.split_at(1);
            let (pos, name) = rest
                .split_once(' ')
                .ok_or_else(|| parse_err(lineno, "malformed symbol line"))?;
            let pos: usize = pos.parse().map_err(|_| parse_err(lineno, "malformed symbol index"))?;
            match kind {
                "i" if pos < self.num_pis => self.pi_names[pos] = Some(name.to_string()),
                "o" if pos < self.pos.len() => self.po_names[pos] = Some(name.to_string()),
                "i" | "o" => return Err(parse_err(lineno, "symbol index out of range")),
                "l" | "b" | "c" | "j" | "f" => {}
                _ => return Err(parse_err(lineno, format!("unexpected line {line:?}"))),
            }
        }
        // Trailing empty line from the final newline.
        if self.comments.last().is_some_and(|c| c.is_empty()) {
            self.comments.pop();
        }
        Ok(())
    }

    /// Writes ASCII AIGER with canonical numbering, symbols and comments.
    pub fn write_aag<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "aag {} {} 0 {} {}",
            self.num_nodes() - 1,
            self.num_pis,
            self.pos.len(),
            self.ands.len()
        )?;
        for i in 0..self.num_pis {
            writeln!(w, "{}", 2 * (i + 1))?;
        }
        for po in &self.pos {
            writeln!(w, "{}", po.raw())?;
        }
        for n in self.and_nodes() {
            let a = self.and(n);
            writeln!(w, "{} {} {}", 2 * n, a.fanin0.raw(), a.fanin1.raw())?;
        }
        for (i, name) in self.pi_names.iter().enumerate() {
            if let Some(name) = name {
                writeln!(w, "i{i} {name}")?;
            }
        }
        for (i, name) in self.po_names.iter().enumerate() {
            if let Some(name) = name {
                writeln!(w, "o{i} {name}")?;
            }
        }
        if !self.comments.is_empty() {
            writeln!(w, "c")?;
            for c in &self.comments {
                writeln!(w, "{c}")?;
            }
        }
        Ok(())
    }

    pub fn to_aag_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_aag(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("AIGER output is ASCII")
    }
}

fn header_body_lines(binary: bool, h: &AigerHeader) -> usize {
    if binary {
        2 + h.outputs
    } else {
        2 + h.inputs + h.outputs + h.ands
    }
}

/// File contents in AIGER variable numbering, before renumbering.
struct RawAiger {
    header: AigerHeader,
    inputs: Vec<u32>,
    outputs: Vec<u32>,
    ands: Vec<(u32, u32, u32)>,
}

impl RawAiger {
    fn read_ascii<'a>(&mut self, body: &'a [u8]) -> Result<&'a [u8], AigError> {
        let h = self.header;
        let mut offset = 0;
        let mut lineno = 1;
        let mut next_line = |offset: &mut usize| -> Result<(usize, Vec<u32>), AigError> {
            lineno += 1;
            if *offset >= body.len() {
                return Err(parse_err(lineno, "unexpected end of file"));
            }
            let end = body[*offset..].iter().position(|&b| b == b'\n').map_or(body.len(), |p| *offset + p);
            let line = String::from_utf8_lossy(&body[*offset..end]);
            *offset = (end + 1).min(body.len());
            let lits = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| parse_err(lineno, format!("bad literal {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((lineno, lits))
        };
        let max_lit = 2 * h.max_var as u32 + 1;
        for _ in 0..h.inputs {
            let (ln, lits) = next_line(&mut offset)?;
            match lits[..] {
                [l] if l >= 2 && l & 1 == 0 && l <= max_lit => self.inputs.push(l),
                _ => return Err(parse_err(ln, "input line must hold one even literal")),
            }
        }
        for _ in 0..h.outputs {
            let (ln, lits) = next_line(&mut offset)?;
            match lits[..] {
                [l] if l <= max_lit => self.outputs.push(l),
                _ => return Err(parse_err(ln, "output line must hold one literal")),
            }
        }
        for _ in 0..h.ands {
            let (ln, lits) = next_line(&mut offset)?;
            match lits[..] {
                [l, a, b] if l >= 2 && l & 1 == 0 && l.max(a).max(b) <= max_lit => self.ands.push((l, a, b)),
                _ => return Err(parse_err(ln, "AND line must hold an even literal and two fanins")),
            }
        }
        Ok(&body[offset..])
    }

    fn read_binary<'a>(&mut self, body: &'a [u8]) -> Result<&'a [u8], AigError> {
        let h = self.header;
        let mut offset = 0;
        for i in 0..h.inputs {
            self.inputs.push(2 * (i as u32 + 1));
        }
        for i in 0..h.outputs {
            let end = body[offset..]
                .iter()
                .position(|&b| b == b'\n')
                .map(|p| offset + p)
                .ok_or_else(|| parse_err(2 + i, "unexpected end of file"))?;
            let s = String::from_utf8_lossy(&body[offset..end]);
            let l = s.trim().parse::<u32>().map_err(|_| parse_err(2 + i, "bad output literal"))?;
            self.outputs.push(l);
            offset = end + 1;
        }
        let mut cursor = io::Cursor::new(&body[offset..]);
        let decode = |cursor: &mut io::Cursor<&[u8]>| -> Result<u32, AigError> {
            let mut x: u32 = 0;
            let mut shift = 0;
            loop {
                let mut byte = [0u8];
                cursor
                    .read_exact(&mut byte)
                    .map_err(|_| parse_err(2 + h.outputs, "truncated binary AND section"))?;
                x |= ((byte[0] & 0x7f) as u32) << shift;
                if byte[0] & 0x80 == 0 {
                    return Ok(x);
                }
                shift += 7;
                if shift > 28 {
                    return Err(parse_err(2 + h.outputs, "oversized delta"));
                }
            }
        };
        for i in 0..h.ands {
            let lhs = 2 * (h.inputs + i + 1) as u32;
            let d0 = decode(&mut cursor)?;
            let d1 = decode(&mut cursor)?;
            let a = lhs.checked_sub(d0).ok_or_else(|| parse_err(2 + h.outputs, "bad delta"))?;
            let b = a.checked_sub(d1).ok_or_else(|| parse_err(2 + h.outputs, "bad delta"))?;
            self.ands.push((lhs, a, b));
        }
        let consumed = cursor.position() as usize;
        Ok(&body[offset + consumed..])
    }

    /// Renumbers into topological order, folding constant fanins.
    fn build(self) -> Result<Aig, AigError> {
        let h = self.header;
        let nvars = h.max_var + 1;
        let mut aig = Aig::new(self.inputs.len());
        aig.header = h;
        let mut map: Vec<Option<Lit>> = vec![None; nvars];
        map[0] = Some(Lit::FALSE);
        for (i, &l) in self.inputs.iter().enumerate() {
            let v = (l >> 1) as usize;
            if map[v].is_some() {
                return Err(parse_err(2 + i, format!("variable {v} defined twice")));
            }
            map[v] = Some(aig.pi(i));
        }
        let mut def: Vec<Option<(u32, u32)>> = vec![None; nvars];
        for (i, &(l, a, b)) in self.ands.iter().enumerate() {
            let v = (l >> 1) as usize;
            if map[v].is_some() || def[v].is_some() {
                return Err(parse_err(2 + h.inputs + h.outputs + i, format!("variable {v} defined twice")));
            }
            def[v] = Some((a, b));
        }
        // Iterative DFS; state 1 = on stack, 2 = done.
        let mut state = vec![0u8; nvars];
        let roots: Vec<u32> = self
            .ands
            .iter()
            .map(|&(l, _, _)| l)
            .chain(self.outputs.iter().copied())
            .collect();
        for root in roots {
            let rv = (root >> 1) as usize;
            if map[rv].is_some() {
                continue;
            }
            let mut stack = vec![(rv, false)];
            while let Some((v, expanded)) = stack.pop() {
                if map[v].is_some() {
                    continue;
                }
                let (a, b) = def[v].ok_or(AigError::Undefined(2 * v as u32))?;
                if expanded {
                    let la = map[(a >> 1) as usize].unwrap().negate_if(a & 1 != 0);
                    let lb = map[(b >> 1) as usize].unwrap().negate_if(b & 1 != 0);
                    map[v] = Some(aig.add_and(la, lb));
                    state[v] = 2;
                    continue;
                }
                if state[v] == 1 {
                    return Err(AigError::Cycle(2 * v as u32));
                }
                state[v] = 1;
                stack.push((v, true));
                for f in [b, a] {
                    let fv = (f >> 1) as usize;
                    if map[fv].is_none() {
                        if state[fv] == 1 {
                            return Err(AigError::Cycle(f));
                        }
                        stack.push((fv, false));
                    }
                }
            }
        }
        for &o in &self.outputs {
            let lit = map[(o >> 1) as usize].ok_or(AigError::Undefined(o))?;
            aig.add_po(lit.negate_if(o & 1 != 0), None);
        }
        Ok(aig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn minimal_and() {
        let aig = Aig::parse_bytes(b"aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n").unwrap();
        assert_eq!((aig.num_pis(), aig.num_pos(), aig.num_ands()), (2, 1, 1));
        assert_eq!(aig.pos()[0], Lit::new(3, false));
        assert_eq!(aig.simulate_pos(&[0b1100, 0b1010]), vec![0b1000]);
        assert_eq!(aig.topo_levels()[3], 1);
    }

    #[test]
    fn inverter_output() {
        let aig = Aig::parse_bytes(b"aag 1 1 0 1 0\n2\n3\n").unwrap();
        assert_eq!(aig.pos()[0], Lit::new(1, true));
        assert_eq!(aig.simulate_pos(&[0b01])[0] & 0b11, 0b10);
    }

    #[test]
    fn and_tree_levels() {
        let mut aig = Aig::new(8);
        let mut layer: Vec<Lit> = (0..8).map(|i| aig.pi(i)).collect();
        while layer.len() > 1 {
            layer = layer.chunks(2).map(|p| aig.add_and(p[0], p[1])).collect();
        }
        aig.add_po(layer[0], None);
        assert_eq!(aig.depth(), 3);
    }

    #[test]
    fn constants_fold() {
        let aig = Aig::parse_bytes(b"aag 4 2 0 2 2\n2\n4\n6\n8\n6 2 1\n8 4 0\n").unwrap();
        assert_eq!(aig.num_ands(), 0);
        assert_eq!(aig.pos(), &[Lit::new(1, false), Lit::FALSE]);
    }

    #[test]
    fn out_of_order_definitions() {
        let aig = Aig::parse_bytes(b"aag 5 2 0 1 3\n2\n4\n10\n10 8 6\n6 2 4\n8 3 5\n").unwrap();
        assert_eq!(aig.num_ands(), 3);
        for n in aig.and_nodes() {
            let a = aig.and(n);
            assert!(a.fanin0.node() < n && a.fanin1.node() < n);
        }
        // (a & b) & (!a & !b) = 0
        assert_eq!(aig.simulate_pos(&[0b1100, 0b1010]), vec![0]);
    }

    #[test]
    fn errors() {
        assert!(matches!(Aig::parse_bytes(b"aag 1 0 1 0 0\n2 3\n"), Err(AigError::Latches(1))));
        assert!(matches!(Aig::parse_bytes(b"abc\n"), Err(AigError::Parse { line: 1, .. })));
        assert!(matches!(Aig::parse_bytes(b"aag 3 2 0 1 1\n2\n4\n6\n6 2\n"), Err(AigError::Parse { line: 5, .. })));
        assert!(matches!(Aig::parse_bytes(b"aag 3 1 0 1 1\n2\n6\n6 2 4\n"), Err(AigError::Undefined(4))));
        assert!(matches!(Aig::parse_bytes(b"aag 4 1 0 1 2\n2\n6\n6 2 8\n8 6 2\n"), Err(AigError::Cycle(_))));
        assert!(matches!(Aig::parse_bytes(b"aag 2 2 0 1 0\n2\n4\nx\n"), Err(AigError::Parse { line: 4, .. })));
    }

    #[test]
    fn symbols_and_round_trip() {
        let text = "aag 3 2 0 1 1\n2\n4\n7\n6 2 5\ni0 a\ni1 b\no0 y\nc\nhello\n";
        let aig = Aig::parse_bytes(text.as_bytes()).unwrap();
        assert_eq!(aig.pi_name(1), "b");
        assert_eq!(aig.po_name(0), "y");
        assert_eq!(aig.comments, vec!["hello".to_string()]);
        assert_eq!(aig.to_aag_string(), text);
    }

    #[test]
    fn binary_matches_ascii() {
        // a & !b, output negated.
        let mut bin = b"aig 3 2 0 1 1\n7\n".to_vec();
        bin.extend_from_slice(&[1, 3]);
        bin.extend_from_slice(b"i0 a\n");
        let aig = Aig::parse_bytes(&bin).unwrap();
        let ascii = Aig::parse_bytes(b"aag 3 2 0 1 1\n2\n4\n7\n6 5 2\n").unwrap();
        assert_eq!(aig.simulate_pos(&[0b1100, 0b1010]), ascii.simulate_pos(&[0b1100, 0b1010]));
        assert_eq!(aig.pi_name(0), "a");
    }

    #[test]
    fn random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let aig = Aig::random(6, 40, 5, &mut rng);
        let back = Aig::parse_bytes(aig.to_aag_string().as_bytes()).unwrap();
        assert_eq!(back.to_aag_string(), aig.to_aag_string());
        let levels = aig.topo_levels();
        for n in aig.and_nodes() {
            let a = aig.and(n);
            assert!(levels[n] > levels[a.fanin0.node()] && levels[n] > levels[a.fanin1.node()]);
        }
    }
}
