#include "paracheck/geometry.hpp"

#include <cmath>

#include "paracheck/linalg.hpp"

namespace paracheck {

namespace {

std::vector<std::vector<ScalarExpr>> minor_matrix(const std::vector<std::vector<ScalarExpr>>& m,
                                                  size_t row, size_t col) {
    size_t n = m.size();
    std::vector<std::vector<ScalarExpr>> out(n - 1, std::vector<ScalarExpr>(n - 1));
    size_t r = 0;
    for (size_t i = 0; i < n; ++i) {
        if (i == row) continue;
        size_t c = 0;
        for (size_t j = 0; j < n; ++j) {
            if (j == col) continue;
            out[r][c] = m[i][j];
            ++c;
        }
        ++r;
    }
    return out;
}

} // namespace

ScalarExpr determinant(const std::vector<std::vector<ScalarExpr>>& m) {
    size_t n = m.size();
    if (n == 0) return ScalarExpr(1);
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    ScalarExpr det;
    for (size_t j = 0; j < n; ++j) {
        ScalarExpr cof = m[0][j] * determinant(minor_matrix(m, 0, j));
        det = (j % 2 == 0) ? det + cof : det - cof;
    }
    return det;
}

std::vector<std::vector<ScalarExpr>> matrix_inverse_exact(
    const std::vector<std::vector<ScalarExpr>>& m) {
    size_t n = m.size();
    ScalarExpr det = determinant(m);
    ScalarExpr inv_det = ScalarExpr(1) / det;
    std::vector<std::vector<ScalarExpr>> inv(n, std::vector<ScalarExpr>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            ScalarExpr cof = determinant(minor_matrix(m, j, i));
            if ((i + j) % 2 == 1) cof = -cof;
            inv[i][j] = cof * inv_det;
        }
    }
    return inv;
}

MetricField MetricField::build(const Chart& chart, const std::vector<std::vector<ScalarExpr>>& comps,
                               int points, uint64_t seed, const ParamBindings& bindings) {
    int dim = chart.dim;
    if (static_cast<int>(comps.size()) != dim) {
        throw std::invalid_argument("metric component matrix does not match chart dimension");
    }
    MetricField m;
    m.dim_ = dim;
    m.g_ = TensorField(dim, {Variance::Lower, Variance::Lower});
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(comps[static_cast<size_t>(i)].size()) != dim) {
            throw std::invalid_argument("metric component matrix is not square");
        }
        for (int j = 0; j < dim; ++j) m.g_.at(i, j) = comps[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    m.det_ = determinant(comps);
    m.inv_ = matrix_inverse_exact(comps);

    auto pts = sample_points(chart.domain, points, seed, bindings);
    bool first_point = true;
    for (const auto& p : pts) {
        ValueEnv env = point_env(chart.domain, p, bindings);
        Evaluator ev(env);
        Matrix gv(static_cast<size_t>(dim), std::vector<double>(static_cast<size_t>(dim)));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) gv[static_cast<size_t>(i)][static_cast<size_t>(j)] = ev(m.g_.at(i, j));
        for (int i = 0; i < dim; ++i) {
            for (int j = i + 1; j < dim; ++j) {
                double diff = std::abs(gv[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                       gv[static_cast<size_t>(j)][static_cast<size_t>(i)]);
                double scale = std::max({1.0, std::abs(gv[static_cast<size_t>(i)][static_cast<size_t>(j)]),
                                         std::abs(gv[static_cast<size_t>(j)][static_cast<size_t>(i)])});
                if (diff / scale > 1e-9) {
                    throw std::invalid_argument("metric is not symmetric");
                }
            }
        }
        double detv = ev(m.det_);
        if (std::abs(detv) < kDetMargin) {
            throw SingularMetricError("metric determinant below margin at a sample point");
        }
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                double acc = 0;
                for (int k = 0; k < dim; ++k) {
                    acc += ev(m.inv_[static_cast<size_t>(i)][static_cast<size_t>(k)]) *
                           gv[static_cast<size_t>(k)][static_cast<size_t>(j)];
                }
                double expect = i == j ? 1.0 : 0.0;
                if (std::abs(acc - expect) > 1e-9) {
                    throw SingularMetricError("exact metric inverse failed numeric validation");
                }
            }
        }
        auto eig = symmetric_eigenvalues(gv);
        int np = 0, nn = 0;
        for (double e : eig) (e > 0 ? np : nn)++;
        if (first_point) {
            m.n_pos_ = np;
            m.n_neg_ = nn;
            first_point = false;
        } else if (np != m.n_pos_ || nn != m.n_neg_) {
            throw SingularMetricError("metric signature changes across the domain");
        }
    }
    return m;
}

std::string MetricField::signature() const {
    std::string s = "(";
    for (int i = 0; i < n_pos_; ++i) s += "+,";
    for (int i = 0; i < n_neg_; ++i) s += "-,";
    if (s.back() == ',') s.pop_back();
    return s + ")";
}

int FrameSpec::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::vector<ScalarExpr>> frame_coframe(const FrameSpec& frame) {
    int dim = frame.dim();
    // columns of the matrix are the frame vectors
    std::vector<std::vector<ScalarExpr>> m(static_cast<size_t>(dim),
                                           std::vector<ScalarExpr>(static_cast<size_t>(dim)));
    for (int i = 0; i < dim; ++i)
        for (int a = 0; a < dim; ++a)
            m[static_cast<size_t>(i)][static_cast<size_t>(a)] =
                frame.vectors[static_cast<size_t>(a)].comps[static_cast<size_t>(i)];
    return matrix_inverse_exact(m);
}

std::vector<ScalarExpr> frame_coefficients(const FrameSpec& frame, const VectorField& v) {
    auto theta = frame_coframe(frame);
    int dim = frame.dim();
    std::vector<ScalarExpr> coeff(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        ScalarExpr acc;
        for (int i = 0; i < dim; ++i) {
            acc += theta[static_cast<size_t>(a)][static_cast<size_t>(i)] * v.comps[static_cast<size_t>(i)];
        }
        coeff[static_cast<size_t>(a)] = acc;
    }
    return coeff;
}

MetricField metric_from_frame(const FrameSpec& frame, const Chart& chart, int points, uint64_t seed,
                              const ParamBindings& bindings) {
    int dim = chart.dim;
    if (frame.dim() != dim) {
        throw std::invalid_argument("frame size does not match chart dimension");
    }
    std::vector<std::vector<ScalarExpr>> theta;
    try {
        theta = frame_coframe(frame);
    } catch (const std::exception&) {
        throw SingularMetricError("frame matrix could not be inverted");
    }
    // g_ij = sum_ab inner_ab theta^a_i theta^b_j
    std::vector<std::vector<ScalarExpr>> g(static_cast<size_t>(dim),
                                           std::vector<ScalarExpr>(static_cast<size_t>(dim)));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            ScalarExpr acc;
            for (int a = 0; a < dim; ++a) {
                for (int b = 0; b < dim; ++b) {
                    const Rational& inner = frame.inner[static_cast<size_t>(a)][static_cast<size_t>(b)];
                    if (inner.is_zero()) continue;
                    acc += ScalarExpr(inner) * theta[static_cast<size_t>(a)][static_cast<size_t>(i)] *
                           theta[static_cast<size_t>(b)][static_cast<size_t>(j)];
                }
            }
            g[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
        }
    }
    try {
        return MetricField::build(chart, g, points, seed, bindings);
    } catch (const SingularMetricError&) {
        throw SingularMetricError("frame metric is singular on the domain");
    }
}

VectorField lie_bracket(const Chart& chart, const VectorField& x, const VectorField& y) {
    int dim = chart.dim;
    if (x.dim() != dim || y.dim() != dim) throw std::invalid_argument("vector field dimension mismatch");
    VectorField out(dim);
    for (int k = 0; k < dim; ++k) {
        ScalarExpr acc;
        for (int i = 0; i < dim; ++i) {
            const std::string& ci = chart.coords()[static_cast<size_t>(i)];
            acc += x.comps[static_cast<size_t>(i)] * differentiate(y.comps[static_cast<size_t>(k)], ci);
            acc -= y.comps[static_cast<size_t>(i)] * differentiate(x.comps[static_cast<size_t>(k)], ci);
        }
        out.comps[static_cast<size_t>(k)] = acc;
    }
    return out;
}

TensorField exterior_derivative(const Chart& chart, const TensorField& form, DetaConvention conv) {
    int dim = chart.dim;
    int k = form.rank();
    for (Variance v : form.variance()) {
        if (v != Variance::Lower) throw DegreeError("exterior derivative requires a covariant form");
    }
    if (k == 0) {
        TensorField df(dim, {Variance::Lower});
        for (int i = 0; i < dim; ++i) df.at(i) = differentiate(form[0], chart.coords()[static_cast<size_t>(i)]);
        return df;
    }
    if (k == 1) {
        ScalarExpr factor = conv == DetaConvention::Half ? ScalarExpr(Rational(1, 2)) : ScalarExpr(1);
        TensorField d(dim, {Variance::Lower, Variance::Lower});
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                d.at(i, j) = factor * (differentiate(form.at(j), chart.coords()[static_cast<size_t>(i)]) -
                                       differentiate(form.at(i), chart.coords()[static_cast<size_t>(j)]));
            }
        }
        return d;
    }
    if (k == 2) {
        TensorField d(dim, {Variance::Lower, Variance::Lower, Variance::Lower});
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                for (int l = 0; l < dim; ++l) {
                    d.at(i, j, l) = differentiate(form.at(j, l), chart.coords()[static_cast<size_t>(i)]) -
                                    differentiate(form.at(i, l), chart.coords()[static_cast<size_t>(j)]) +
                                    differentiate(form.at(i, j), chart.coords()[static_cast<size_t>(l)]);
                }
            }
        }
        return d;
    }
    throw DegreeError("exterior derivative supports forms of degree 0, 1, 2");
}

TensorField wedge(const TensorField& a, const TensorField& b) {
    for (Variance v : a.variance())
        if (v != Variance::Lower) throw DegreeError("wedge requires covariant forms");
    for (Variance v : b.variance())
        if (v != Variance::Lower) throw DegreeError("wedge requires covariant forms");
    int ka = a.rank(), kb = b.rank();
    if (ka + kb > 3) throw DegreeError("wedge supports total degree <= 3");
    if (ka == 2 && kb == 1) return wedge(b, a); // 1-form and 2-form commute
    int dim = a.dim();
    if (ka == 1 && kb == 1) {
        TensorField w(dim, {Variance::Lower, Variance::Lower});
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) w.at(i, j) = a.at(i) * b.at(j) - a.at(j) * b.at(i);
        return w;
    }
    if (ka == 1 && kb == 2) {
        TensorField w(dim, {Variance::Lower, Variance::Lower, Variance::Lower});
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    w.at(i, j, k) = a.at(i) * b.at(j, k) - a.at(j) * b.at(i, k) + a.at(k) * b.at(i, j);
        return w;
    }
    throw DegreeError("unsupported wedge degrees");
}

CurvatureBundle compute_curvature(const Chart& chart, const MetricField& metric) {
    int dim = chart.dim;
    CurvatureBundle b;
    b.dim = dim;
    b.gamma.assign(static_cast<size_t>(dim) * dim * dim, ScalarExpr());

    // dg[k][i][j] = d_k g_ij
    std::vector<std::vector<std::vector<ScalarExpr>>> dg(
        static_cast<size_t>(dim),
        std::vector<std::vector<ScalarExpr>>(static_cast<size_t>(dim),
                                             std::vector<ScalarExpr>(static_cast<size_t>(dim))));
    for (int k = 0; k < dim; ++k)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                dg[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    differentiate(metric.component(i, j), chart.coords()[static_cast<size_t>(k)]);

    for (int k = 0; k < dim; ++k) {
        for (int i = 0; i < dim; ++i) {
            for (int j = i; j < dim; ++j) {
                ScalarExpr acc;
                for (int l = 0; l < dim; ++l) {
                    ScalarExpr koszul = dg[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(l)] +
                                        dg[static_cast<size_t>(j)][static_cast<size_t>(i)][static_cast<size_t>(l)] -
                                        dg[static_cast<size_t>(l)][static_cast<size_t>(i)][static_cast<size_t>(j)];
                    acc += metric.inverse(k, l) * koszul;
                }
                ScalarExpr g = ScalarExpr(Rational(1, 2)) * acc;
                b.christoffel(k, i, j) = g;
                b.christoffel(k, j, i) = g;
            }
        }
    }

    b.riemann = TensorField(dim, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
    for (int l = 0; l < dim; ++l) {
        for (int i = 0; i < dim; ++i) {
            for (int j = i + 1; j < dim; ++j) {
                for (int k = 0; k < dim; ++k) {
                    ScalarExpr acc = differentiate(b.christoffel(l, j, k), chart.coords()[static_cast<size_t>(i)]) -
                                     differentiate(b.christoffel(l, i, k), chart.coords()[static_cast<size_t>(j)]);
                    for (int m = 0; m < dim; ++m) {
                        acc += b.christoffel(l, i, m) * b.christoffel(m, j, k);
                        acc -= b.christoffel(l, j, m) * b.christoffel(m, i, k);
                    }
                    b.riemann.at(l, i, j, k) = acc;
                    b.riemann.at(l, j, i, k) = -acc;
                }
            }
        }
    }

    b.ricci = TensorField(dim, {Variance::Lower, Variance::Lower});
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
            ScalarExpr acc;
            for (int i = 0; i < dim; ++i) acc += b.riemann.at(i, i, j, k);
            b.ricci.at(j, k) = acc;
        }
    }

    b.scalar = ScalarExpr();
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) b.scalar += metric.inverse(j, k) * b.ricci.at(j, k);

    b.ricci_op = TensorField(dim, {Variance::Upper, Variance::Lower});
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            ScalarExpr acc;
            for (int k = 0; k < dim; ++k) acc += metric.inverse(i, k) * b.ricci.at(k, j);
            b.ricci_op.at(i, j) = acc;
        }
    }
    return b;
}

TensorField nabla_vector_field(const Chart& chart, const CurvatureBundle& bundle,
                               const VectorField& v) {
    int dim = chart.dim;
    TensorField out(dim, {Variance::Upper, Variance::Lower});
    for (int l = 0; l < dim; ++l) {
        for (int i = 0; i < dim; ++i) {
            ScalarExpr acc = differentiate(v.comps[static_cast<size_t>(l)], chart.coords()[static_cast<size_t>(i)]);
            for (int m = 0; m < dim; ++m) acc += bundle.christoffel(l, i, m) * v.comps[static_cast<size_t>(m)];
            out.at(l, i) = acc;
        }
    }
    return out;
}

VectorField covariant_derivative_vector(const Chart& chart, const CurvatureBundle& bundle,
                                        const VectorField& x, const VectorField& y) {
    TensorField ny = nabla_vector_field(chart, bundle, y);
    int dim = chart.dim;
    VectorField out(dim);
    for (int l = 0; l < dim; ++l) {
        ScalarExpr acc;
        for (int i = 0; i < dim; ++i) acc += x.comps[static_cast<size_t>(i)] * ny.at(l, i);
        out.comps[static_cast<size_t>(l)] = acc;
    }
    return out;
}

TensorField covariant_derivative_one_one(const Chart& chart, const CurvatureBundle& bundle,
                                         const TensorField& phi) {
    int dim = chart.dim;
    TensorField out(dim, {Variance::Upper, Variance::Lower, Variance::Lower});
    for (int l = 0; l < dim; ++l) {
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                ScalarExpr acc = differentiate(phi.at(l, j), chart.coords()[static_cast<size_t>(i)]);
                for (int m = 0; m < dim; ++m) {
                    acc += bundle.christoffel(l, i, m) * phi.at(m, j);
                    acc -= bundle.christoffel(m, i, j) * phi.at(l, m);
                }
                out.at(l, i, j) = acc;
            }
        }
    }
    return out;
}

TensorField covariant_derivative_zero_two(const Chart& chart, const CurvatureBundle& bundle,
                                          const TensorField& s) {
    int dim = chart.dim;
    TensorField out(dim, {Variance::Lower, Variance::Lower, Variance::Lower});
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < dim; ++k) {
                ScalarExpr acc = differentiate(s.at(j, k), chart.coords()[static_cast<size_t>(i)]);
                for (int m = 0; m < dim; ++m) {
                    acc -= bundle.christoffel(m, i, j) * s.at(m, k);
                    acc -= bundle.christoffel(m, i, k) * s.at(j, m);
                }
                out.at(i, j, k) = acc;
            }
        }
    }
    return out;
}

VectorField gradient(const Chart& chart, const ScalarExpr& f, const MetricField& metric) {
    int dim = chart.dim;
    VectorField out(dim);
    for (int i = 0; i < dim; ++i) {
        ScalarExpr acc;
        for (int j = 0; j < dim; ++j) {
            acc += metric.inverse(i, j) * differentiate(f, chart.coords()[static_cast<size_t>(j)]);
        }
        out.comps[static_cast<size_t>(i)] = acc;
    }
    return out;
}

TensorField hessian(const Chart& chart, const ScalarExpr& f, const CurvatureBundle& bundle) {
    int dim = chart.dim;
    std::vector<ScalarExpr> df(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) df[static_cast<size_t>(i)] = differentiate(f, chart.coords()[static_cast<size_t>(i)]);
    TensorField out(dim, {Variance::Lower, Variance::Lower});
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            ScalarExpr acc = differentiate(df[static_cast<size_t>(j)], chart.coords()[static_cast<size_t>(i)]);
            for (int k = 0; k < dim; ++k) acc -= bundle.christoffel(k, i, j) * df[static_cast<size_t>(k)];
            out.at(i, j) = acc;
        }
    }
    return out;
}

TensorField lie_derivative_metric(const Chart& chart, const VectorField& v,
                                  const CurvatureBundle& bundle, const MetricField& metric) {
    TensorField nv = nabla_vector_field(chart, bundle, v);
    int dim = chart.dim;
    TensorField out(dim, {Variance::Lower, Variance::Lower});
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            ScalarExpr acc;
            for (int k = 0; k < dim; ++k) {
                acc += metric.component(k, j) * nv.at(k, i);
                acc += metric.component(i, k) * nv.at(k, j);
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

TensorField metric_dual(const MetricField& metric, const VectorField& zeta) {
    int dim = metric.dim();
    TensorField eta(dim, {Variance::Lower});
    for (int i = 0; i < dim; ++i) {
        ScalarExpr acc;
        for (int j = 0; j < dim; ++j) acc += metric.component(i, j) * zeta.comps[static_cast<size_t>(j)];
        eta.at(i) = acc;
    }
    return eta;
}

VectorField raise_index(const MetricField& metric, const TensorField& one_form) {
    int dim = metric.dim();
    VectorField v(dim);
    for (int i = 0; i < dim; ++i) {
        ScalarExpr acc;
        for (int j = 0; j < dim; ++j) acc += metric.inverse(i, j) * one_form.at(j);
        v.comps[static_cast<size_t>(i)] = acc;
    }
    return v;
}

} // namespace paracheck
