//! Brute-force symplectic group machinery: GSp4(F3), Sp4(F3), Sp4(F2),
//! Sp6(F2); the ten outer conjugacy classes of PGSp4(F3); the permutation
//! dictionary S6 = GSp4(F2); involution/oddness bookkeeping over F2; and
//! matrix-group predicates (absolute irreducibility, regular semisimple
//! witnesses).

mod atlas;
mod forms;
mod bitmat;
mod dictionary;
mod matf3;
mod oddness;
mod predicates;
mod table;

pub use atlas::{
    charpoly_is_squarefree_f3, classify_class, pgsp_outer_atlas, reg_ss_classes, s40_cycle_type,
    signature_oracle,
    ClassLabel, OuterAtlas, OuterClass, SignatureOracle,
};
pub use bitmat::{is_symplectic, j2n, transvection2, BitMat};
pub use dictionary::{
    a5b_elements, perm_cycle_type, perm_to_gsp4, s5b_elements, s6_elements, s6_gsp4_dictionary,
    siegel_parabolic_facts, DictionaryData, Perm6, SiegelReport,
};
pub use forms::{invariant_form_space, nondegenerate_members, symplectic_basis};
pub use matf3::{rank4, transvection, Mat4F3, J4};
pub use oddness::{involution_oddness, is_strongly_odd, InvolutionClassReport};
pub use predicates::{matrix_group_predicates, GroupPredicates};
pub use table::{generate_f2, generate_f3, ClassInfo, F2Table, F3Table, GroupKind};
