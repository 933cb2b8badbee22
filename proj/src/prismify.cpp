#include <cmath>

#include "enlarge/certificate.hpp"

namespace enlarge {

PrismResult prismify(const Certificate& cert, const Vec& x1, const Vec& h, const Mat& basis,
                     const Tolerances& tol) {
  const int n = cert.dim();
  if (x1.size() != n || h.size() != n || basis.rows() != n || basis.cols() != n - 1)
    throw InputError("prismify: x1, h and the n-1 basis vectors must have dimension " + std::to_string(n));
  if (!verify_certificate(cert, tol).valid) throw PreconditionError("prismify: input certificate is not valid");
  if (std::abs(h.dot(x1) - 1.0) > tol.eq) throw PreconditionError("prismify: h(x1) != 1", x1);
  for (int i = 0; i < n - 1; ++i)
    if (std::abs(h.dot(basis.col(i))) > tol.eq)
      throw PreconditionError("prismify: h(x_" + std::to_string(i + 2) + ") != 0", basis.col(i));
  Mat full(n, n);
  full << x1, basis;
  Eigen::FullPivLU<Mat> lu(full);
  lu.setThreshold(tol.rank);
  if (!lu.isInvertible()) throw RankError("prismify: {x1, x2..xn} is not a basis");

  const Body z = cert.zonotope();
  const double slab = support(z, h, tol);
  if (slab > 1.0 + tol.feas)
    throw PreconditionError("prismify: certificate zonotope leaves the slab |h| <= 1 (support " +
                                std::to_string(slab) + ")",
                            h);

  AtomDecomposition atoms;
  atoms.b1.assign(n, 0.0);
  atoms.b2.assign(n, 0.0);
  atoms.nu.assign(n, {});
  Vec yh = Vec::Zero(n);
  std::vector<Pair> out_pairs;
  for (std::size_t j = 0; j < cert.pairs().size(); ++j) {
    const Pair& p = cert.pairs()[j];
    const Vec c = lu.solve(p.y);
    if ((p.f - h).cwiseAbs().maxCoeff() <= tol.eq) {
      for (int i = 0; i < n; ++i) atoms.b1[i] += c(i);
      yh += p.y;
    } else if ((p.f + h).cwiseAbs().maxCoeff() <= tol.eq) {
      for (int i = 0; i < n; ++i) atoms.b2[i] += c(i);
      yh -= p.y;
    } else {
      if (std::abs(c(0)) > tol.feas)
        throw HypothesisError("prismify: pair " + std::to_string(j) + " has f != +-h but x1-coordinate " +
                              std::to_string(c(0)) + "; the smoothness surrogate fails");
      for (int i = 0; i < n; ++i)
        if (c(i) != 0.0) atoms.nu[i].push_back({p.f, c(i)});
      out_pairs.push_back(p);
    }
  }
  if (std::abs(atoms.b1[0] - atoms.b2[0] - 1.0) > tol.eq)
    throw HypothesisError("prismify: b1 - b2 at x1 is " + std::to_string(atoms.b1[0] - atoms.b2[0]) + ", expected 1");
  out_pairs.insert(out_pairs.begin(), Pair{h, yh});

  PrismResult res{Certificate(cert.space(), cert.enlargement(), std::move(out_pairs)), std::move(atoms), {}, false, {}};
  res.verification = verify_certificate(res.certificate, tol);
  res.prism_shape = true;
  for (std::size_t j = 1; j < res.certificate.pairs().size(); ++j)
    if (std::abs(h.dot(res.certificate.pairs()[j].y)) > tol.eq) res.prism_shape = false;
  res.inside_input = contains_body(res.certificate.zonotope(), z, tol);
  return res;
}

}  // namespace enlarge
