use std::collections::HashMap;
use std::fmt;

/// A variable by global index within its parity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Bos(usize),
    Ferm(usize),
}

impl Var {
    pub fn is_fermionic(self) -> bool {
        matches!(self, Var::Ferm(_))
    }
}

/// A named group of `m` bosonic and `2n` fermionic variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub bos_names: Vec<String>,
    pub ferm_names: Vec<String>,
    bos_offset: usize,
    ferm_offset: usize,
}

impl Block {
    pub fn m(&self) -> usize {
        self.bos_names.len()
    }

    /// Number of fermionic variables (2n).
    pub fn nferm(&self) -> usize {
        self.ferm_names.len()
    }

    pub fn n(&self) -> usize {
        self.ferm_names.len() / 2
    }

    pub fn bos(&self, i: usize) -> Var {
        assert!(i < self.m());
        Var::Bos(self.bos_offset + i)
    }

    pub fn ferm(&self, j: usize) -> Var {
        assert!(j < self.nferm());
        Var::Ferm(self.ferm_offset + j)
    }

    pub fn bos_range(&self) -> std::ops::Range<usize> {
        self.bos_offset..self.bos_offset + self.m()
    }

    pub fn ferm_range(&self) -> std::ops::Range<usize> {
        self.ferm_offset..self.ferm_offset + self.nferm()
    }

    /// The supervector `(x_1..x_m, e_1..e_2n)` of this block, in order.
    pub fn supervector(&self) -> Vec<Var> {
        (0..self.m())
            .map(|i| self.bos(i))
            .chain((0..self.nferm()).map(|j| self.ferm(j)))
            .collect()
    }

    pub fn contains(&self, v: Var) -> bool {
        match v {
            Var::Bos(i) => self.bos_range().contains(&i),
            Var::Ferm(j) => self.ferm_range().contains(&j),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockId(pub usize);

/// Ordered variable blocks. The global ordering lists bosonic variables block by
/// block, and fermionic variables block by block; canonical fermionic monomials
/// are ascending in this global order.
#[derive(Debug, Clone)]
pub struct VarSpec {
    blocks: Vec<Block>,
    nbos: usize,
    nferm: usize,
    names: HashMap<String, Var>,
}

impl PartialEq for VarSpec {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for VarSpec {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarSpecError {
    #[error("duplicate block name `{0}`")]
    DuplicateBlock(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("fermionic variable count must be even, got {0}")]
    OddFermionCount(usize),
    #[error("too many fermionic variables ({0} > 64)")]
    TooManyFermions(usize),
}

impl VarSpec {
    /// Builds a spec from `(block name, bosonic names, fermionic names)`.
    pub fn new(blocks: Vec<(String, Vec<String>, Vec<String>)>) -> Result<Self, VarSpecError> {
        let mut out = Vec::new();
        let mut names = HashMap::new();
        let (mut nb, mut nf) = (0, 0);
        for (name, bos, ferm) in blocks {
            if out.iter().any(|b: &Block| b.name == name) {
                return Err(VarSpecError::DuplicateBlock(name));
            }
            if ferm.len() % 2 != 0 {
                return Err(VarSpecError::OddFermionCount(ferm.len()));
            }
            for (k, s) in bos.iter().enumerate() {
                if names.insert(s.clone(), Var::Bos(nb + k)).is_some() {
                    return Err(VarSpecError::DuplicateVariable(s.clone()));
                }
            }
            for (k, s) in ferm.iter().enumerate() {
                if names.insert(s.clone(), Var::Ferm(nf + k)).is_some() {
                    return Err(VarSpecError::DuplicateVariable(s.clone()));
                }
            }
            let block = Block {
                name,
                bos_offset: nb,
                ferm_offset: nf,
                bos_names: bos,
                ferm_names: ferm,
            };
            nb += block.m();
            nf += block.nferm();
            out.push(block);
        }
        if nf > 64 {
            return Err(VarSpecError::TooManyFermions(nf));
        }
        Ok(Self {
            blocks: out,
            nbos: nb,
            nferm: nf,
            names,
        })
    }

    fn numbered(prefix: &str, count: usize) -> Vec<String> {
        (1..=count).map(|i| format!("{prefix}{i}")).collect()
    }

    /// The single-block spec of R^{m|2n}: `x1..xm`, `e1..e2n`.
    pub fn superspace(m: usize, n: usize) -> Self {
        Self::new(vec![(
            "x".into(),
            Self::numbered("x", m),
            Self::numbered("e", 2 * n),
        )])
        .expect("valid superspace spec")
    }

    /// Two copies of R^{m|2n} (`x`/`e` and `y`/`f`) plus a scalar bosonic `L`.
    pub fn mean_space(m: usize, n: usize) -> Self {
        Self::new(vec![
            (
                "x".into(),
                Self::numbered("x", m),
                Self::numbered("e", 2 * n),
            ),
            (
                "y".into(),
                Self::numbered("y", m),
                Self::numbered("f", 2 * n),
            ),
            ("L".into(), vec!["L".into()], vec![]),
        ])
        .expect("valid mean spec")
    }

    pub fn nbos(&self) -> usize {
        self.nbos
    }

    pub fn nferm(&self) -> usize {
        self.nferm
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, id: BlockId) -> &Block {
        &self.blocks[id.0]
    }

    pub fn block_id(&self, name: &str) -> Option<BlockId> {
        self.blocks.iter().position(|b| b.name == name).map(BlockId)
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.names.get(name).copied()
    }

    pub fn name(&self, v: Var) -> &str {
        match v {
            Var::Bos(i) => {
                let b = self
                    .blocks
                    .iter()
                    .find(|b| b.bos_range().contains(&i))
                    .expect("bosonic index");
                &b.bos_names[i - b.bos_offset]
            }
            Var::Ferm(j) => {
                let b = self
                    .blocks
                    .iter()
                    .find(|b| b.ferm_range().contains(&j))
                    .expect("fermionic index");
                &b.ferm_names[j - b.ferm_offset]
            }
        }
    }

    /// All variables in global order: bosonic first, then fermionic.
    pub fn all_vars(&self) -> Vec<Var> {
        (0..self.nbos)
            .map(Var::Bos)
            .chain((0..self.nferm).map(Var::Ferm))
            .collect()
    }
}

impl fmt::Display for VarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{}({}|{})", b.name, b.m(), b.nferm()))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
