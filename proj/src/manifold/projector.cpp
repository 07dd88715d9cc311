#include "textsignal/manifold/projector.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Dense>

#include "textsignal/error.hpp"
#include "textsignal/io/fsutil.hpp"
#include "textsignal/io/tables.hpp"
#include "textsignal/util/hash.hpp"

namespace tsig::manifold {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Side limit for the dense eigensolver paths; beyond it the iterative path
// avoids forming any D x D or N x N matrix.
constexpr std::size_t kDenseLimit = 2048;

// Flip each column so its largest-magnitude entry (lowest index on ties) is
// positive. Removes the eigenvector sign ambiguity.
void canonicalize_signs(MatrixXd& w) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            double mag = std::abs(w(r, c));
            if (mag > best) {
                best = mag;
                arg = r;
            }
        }
        if (w(arg, c) < 0.0) w.col(c) = -w.col(c);
    }
}

MatrixXd top_components_covariance(const MatrixXd& centered, int k) {
    double denom = std::max<double>(1.0, static_cast<double>(centered.rows() - 1));
    MatrixXd cov = centered.transpose() * centered / denom;
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::data, "eigendecomposition failed in reference reducer");
    }
    // Eigen orders eigenvalues ascending; take the top k, descending.
    MatrixXd w(centered.cols(), k);
    for (int j = 0; j < k; ++j) {
        w.col(j) = solver.eigenvectors().col(centered.cols() - 1 - j);
    }
    return w;
}

MatrixXd top_components_gram(const MatrixXd& centered, int k) {
    double denom = std::max<double>(1.0, static_cast<double>(centered.rows() - 1));
    MatrixXd gram = centered * centered.transpose() / denom;
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::data, "eigendecomposition failed in reference reducer");
    }
    MatrixXd w = MatrixXd::Zero(centered.cols(), k);
    for (int j = 0; j < k; ++j) {
        Eigen::Index col = centered.rows() - 1 - j;
        double lambda = solver.eigenvalues()(col);
        if (lambda <= 1e-12) continue;  // rank-deficient direction stays zero
        VectorXd dir = centered.transpose() * solver.eigenvectors().col(col);
        double norm = dir.norm();
        if (norm > 0.0) w.col(j) = dir / norm;
    }
    return w;
}

// Deterministic orthogonal (subspace) iteration on the covariance operator,
// applied through matvecs with the centered data. Used only when both N and
// D exceed the dense limit.
MatrixXd top_components_iterative(const MatrixXd& centered, int k, std::uint64_t seed) {
    double denom = std::max<double>(1.0, static_cast<double>(centered.rows() - 1));
    util::SplitMix64 stream(util::mix64(seed ^ 0x70636170726f6a31ULL));
    MatrixXd q(centered.cols(), k);
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
        for (int c = 0; c < k; ++c) q(r, c) = stream.next_gaussian();
    }
    q = Eigen::HouseholderQR<MatrixXd>(q).householderQ() * MatrixXd::Identity(q.rows(), k);

    VectorXd prev = VectorXd::Zero(k);
    MatrixXd z;
    for (int iter = 0; iter < 500; ++iter) {
        z = centered.transpose() * (centered * q) / denom;
        VectorXd ritz(k);
        for (int c = 0; c < k; ++c) ritz(c) = z.col(c).dot(q.col(c));
        q = Eigen::HouseholderQR<MatrixXd>(z).householderQ() * MatrixXd::Identity(z.rows(), k);
        if (iter > 0 && (ritz - prev).cwiseAbs().maxCoeff() <=
                            1e-12 * std::max(1.0, ritz.cwiseAbs().maxCoeff())) {
            prev = ritz;
            break;
        }
        prev = ritz;
    }
    // Rayleigh-Ritz rotation inside the converged subspace.
    MatrixXd b = q.transpose() * (centered.transpose() * (centered * q)) / denom;
    Eigen::SelfAdjointEigenSolver<MatrixXd> small((b + b.transpose()) / 2.0);
    MatrixXd w(centered.cols(), k);
    for (int j = 0; j < k; ++j) {
        w.col(j) = q * small.eigenvectors().col(k - 1 - j);
    }
    return w;
}

Projection project_external(const std::vector<EmbeddingVector>& embeddings,
                            const ProjectorSpec& spec) {
    auto table = io::parse_projection_csv(io::read_file(spec.file));
    if (table.dims != static_cast<std::size_t>(spec.target_dims)) {
        throw Error(ErrorKind::ingestion,
                    "'" + spec.file + "' holds " + std::to_string(table.dims) +
                        "D coordinates, expected " + std::to_string(spec.target_dims) + "D");
    }
    std::unordered_map<std::string, std::size_t> row_of;
    row_of.reserve(table.doc_ids.size());
    for (std::size_t i = 0; i < table.doc_ids.size(); ++i) row_of[table.doc_ids[i]] = i;

    Projection out;
    out.dims = table.dims;
    out.points = PointMatrix(embeddings.size(), table.dims);
    out.doc_ids.reserve(embeddings.size());
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        const auto& id = embeddings[i].doc_id();
        auto it = row_of.find(id);
        if (it == row_of.end()) {
            throw Error(ErrorKind::ingestion, "'" + spec.file + "' is missing doc_id '" + id + "'");
        }
        out.doc_ids.push_back(id);
        auto src = table.points.row(it->second);
        std::copy(src.begin(), src.end(), out.points.row(i).begin());
    }
    return out;
}

Projection project_reduce(const std::vector<EmbeddingVector>& embeddings,
                          const ProjectorSpec& spec) {
    std::size_t n = embeddings.size();
    std::size_t dim = embeddings.front().dim();
    int k = spec.target_dims;
    if (dim < static_cast<std::size_t>(k)) {
        throw Error(ErrorKind::parameter, "embedding dimension " + std::to_string(dim) +
                                              " is below target projection " + std::to_string(k));
    }

    MatrixXd x(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
        if (embeddings[i].dim() != dim) {
            throw Error(ErrorKind::data, "embeddings disagree on dimension at '" +
                                             embeddings[i].doc_id() + "'");
        }
        for (std::size_t d = 0; d < dim; ++d) x(i, d) = embeddings[i].values()[d];
    }
    x.rowwise() -= x.colwise().mean();

    MatrixXd w;
    if (dim <= kDenseLimit) {
        w = top_components_covariance(x, k);
    } else if (n <= kDenseLimit) {
        w = top_components_gram(x, k);
    } else {
        w = top_components_iterative(x, k, spec.seed);
    }
    canonicalize_signs(w);

    MatrixXd coords = x * w;
    Projection out;
    out.dims = static_cast<std::size_t>(k);
    out.points = PointMatrix(n, out.dims);
    out.doc_ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.doc_ids.push_back(embeddings[i].doc_id());
        for (int d = 0; d < k; ++d) out.points.row(i)[d] = coords(i, d);
    }
    return out;
}

}  // namespace

void ProjectorSpec::validate() const {
    if (target_dims != 2 && target_dims != 5) {
        throw Error(ErrorKind::parameter, "target_dims must be 2 or 5");
    }
    if (kind == ProjectorKind::external_file && file.empty()) {
        throw Error(ErrorKind::config, "external_file projector needs a file path");
    }
}

Projection project(const std::vector<EmbeddingVector>& embeddings, const ProjectorSpec& spec) {
    spec.validate();
    if (embeddings.empty()) throw Error(ErrorKind::parameter, "no embeddings to project");
    if (spec.kind == ProjectorKind::external_file) return project_external(embeddings, spec);
    return project_reduce(embeddings, spec);
}

std::vector<ProjectedPoint> merge_projections(const Projection& z5, const Projection& y2) {
    if (z5.dims != 5 || y2.dims != 2) {
        throw Error(ErrorKind::parameter, "merge needs a 5D and a 2D projection");
    }
    std::unordered_map<std::string, std::size_t> row_of;
    row_of.reserve(y2.doc_ids.size());
    for (std::size_t i = 0; i < y2.doc_ids.size(); ++i) row_of[y2.doc_ids[i]] = i;

    std::vector<ProjectedPoint> out;
    out.reserve(z5.doc_ids.size());
    for (std::size_t i = 0; i < z5.doc_ids.size(); ++i) {
        auto it = row_of.find(z5.doc_ids[i]);
        if (it == row_of.end()) {
            throw Error(ErrorKind::data, "doc '" + z5.doc_ids[i] + "' missing from the 2D projection");
        }
        std::array<double, 5> z{};
        std::array<double, 2> y{};
        auto zr = z5.points.row(i);
        auto yr = y2.points.row(it->second);
        std::copy(zr.begin(), zr.end(), z.begin());
        std::copy(yr.begin(), yr.end(), y.begin());
        out.emplace_back(z5.doc_ids[i], z, y);
    }
    return out;
}

}  // namespace tsig::manifold
