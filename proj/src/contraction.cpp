#include <schur/contraction.hpp>

namespace schur {

Contraction make_contraction(const Matrix& m, const Tolerances& tol) {
  Contraction c;
  c.matrix = m;
  c.defects = defect_pair(m, tol);  // validates the norm bound
  c.norm = op_norm(m);
  return c;
}

Classification classify(const Contraction& c, double class_tol) {
  Classification out;
  out.margin = 1.0 - c.norm;
  bool iso = c.defects.rank == 0;
  bool co_iso = c.defects.rank_star == 0;
  if (iso && co_iso)
    out.kind = ContractionKind::unitary;
  else if (iso)
    out.kind = ContractionKind::isometry;
  else if (co_iso)
    out.kind = ContractionKind::co_isometry;
  else if (c.norm <= 1.0 - class_tol)
    out.kind = ContractionKind::strict;
  else
    out.kind = ContractionKind::boundary_generic;
  return out;
}

}  // namespace schur
