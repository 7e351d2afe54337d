// Seeded generator for benchmark instances.  Emits instance JSON on stdout
// (or --out) in the same schema the orbit-metrics commands consume.
#include "om/io.hpp"
#include "om/rng.hpp"

#include "CLI11.hpp"

#include <Eigen/Dense>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

om::Json point_json(double re, double im) { return om::Json::array({re, im}); }

om::Json matrix_json(const om::CMatrix& M) {
    om::Json rows = om::Json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        om::Json row = om::Json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            row.push_back(point_json(M(r, c).real(), M(r, c).imag()));
        rows.push_back(std::move(row));
    }
    return rows;
}

// A deterministic unitary: the eigenbasis of a seeded random Hermitian matrix.
om::CMatrix random_basis(om::RandomStream& rng, Eigen::Index n) {
    om::CMatrix Z(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) Z(r, c) = rng.normal_complex();
    const om::CMatrix H = 0.5 * (Z + om::CMatrix(Z.adjoint()));
    Eigen::SelfAdjointEigenSolver<om::CMatrix> es(H);
    return es.eigenvectors();
}

om::CMatrix assemble(const om::CMatrix& Q, const Eigen::VectorXcd& d) {
    return Q * d.asDiagonal() * Q.adjoint();
}

om::Json matrix_pair(om::RandomStream& rng, Eigen::Index n, bool hermitian, double drift) {
    Eigen::VectorXcd dx(n), dy(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const std::complex<double> v =
            hermitian ? std::complex<double>(rng.uniform(-1.0, 1.0), 0.0)
                      : std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        dx(k) = v;
        dy(k) = v + drift * (hermitian
                                 ? std::complex<double>(rng.uniform(-1.0, 1.0), 0.0)
                                 : std::complex<double>(rng.uniform(-1.0, 1.0),
                                                        rng.uniform(-1.0, 1.0)));
    }
    om::RandomStream bx = rng.fork(101), by = rng.fork(202);
    const om::CMatrix x = assemble(random_basis(bx, n), dx);
    const om::CMatrix y = assemble(random_basis(by, n), dy);
    om::Json j;
    j["x"] = om::Json{{"matrix", matrix_json(x)}};
    j["y"] = om::Json{{"matrix", matrix_json(y)}};
    return j;
}

// Splits `total` into `parts` positive integers, deterministically at random.
std::vector<om::Int> composition(om::RandomStream& rng, om::Int total, std::size_t parts) {
    std::vector<om::Int> out(parts, 1);
    for (om::Int rest = total - static_cast<om::Int>(parts); rest > 0; --rest)
        out[static_cast<std::size_t>(rng.below(parts))] += 1;
    return out;
}

om::Json atoms_json(om::RandomStream& rng, const std::vector<om::Int>& unit,
                    std::size_t count, double spread) {
    std::vector<std::vector<om::Int>> cls(count, std::vector<om::Int>(unit.size(), 0));
    for (std::size_t c = 0; c < unit.size(); ++c) {
        const auto comp = composition(rng, unit[c], count);
        for (std::size_t i = 0; i < count; ++i) cls[i][c] = comp[i];
    }
    om::Json atoms = om::Json::array();
    for (std::size_t i = 0; i < count; ++i) {
        om::Json a;
        a["point"] = point_json(rng.uniform(-spread, spread), rng.uniform(-spread, spread));
        a["class"] = om::Json{{"free", cls[i]}};
        atoms.push_back(std::move(a));
    }
    return atoms;
}

om::Json atomic_pair(om::RandomStream& rng, std::size_t count, double spread) {
    // Two traces over Z^2 with a strictly positive pairing normalised so the
    // unit has trace one.
    const std::vector<om::Int> unit = {static_cast<om::Int>(2 * count),
                                       static_cast<om::Int>(3 * count)};
    auto row = [&](om::Int a, om::Int b) {
        const om::Int den = a * unit[0] + b * unit[1];
        return om::Json::array(
            {std::to_string(a) + "/" + std::to_string(den),
             std::to_string(b) + "/" + std::to_string(den)});
    };
    om::Json model;
    model["traces"] = 2;
    model["group"] = om::Json{{"kind", "simplicial"}, {"k", 2}};
    model["unit"] = om::Json{{"free", unit}};
    model["pairing"] = om::Json::array({row(1 + static_cast<om::Int>(rng.below(3)),
                                            1 + static_cast<om::Int>(rng.below(3))),
                                        row(1 + static_cast<om::Int>(rng.below(3)),
                                            1 + static_cast<om::Int>(rng.below(3)))});
    model["simple"] = true;

    om::RandomStream rx = rng.fork(11), ry = rng.fork(22);
    om::Json j;
    j["model"] = std::move(model);
    j["x"] = om::Json{{"atoms", atoms_json(rx, unit, count, spread)}};
    j["y"] = om::Json{{"atoms", atoms_json(ry, unit, count, spread)}};
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate a seeded orbit-metrics instance"};
    std::string kind = "normal-pair", out_path;
    std::size_t n = 4, atoms = 5;
    std::uint64_t seed = 1;
    double drift = 0.2, spread = 1.0;
    app.add_option("--kind", kind, "normal-pair | hermitian-pair | atomic-pair")
        ->check(CLI::IsMember({"normal-pair", "hermitian-pair", "atomic-pair"}));
    app.add_option("--n", n, "matrix dimension");
    app.add_option("--atoms", atoms, "atoms per side for atomic instances");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--drift", drift, "eigenvalue drift between the pair");
    app.add_option("--spread", spread, "support half-width for atomic instances");
    app.add_option("--out", out_path, "write the instance here instead of stdout");
    CLI11_PARSE(app, argc, argv);

    om::RandomStream rng(seed);
    om::Json j;
    if (kind == "normal-pair")
        j = matrix_pair(rng, static_cast<Eigen::Index>(n), false, drift);
    else if (kind == "hermitian-pair")
        j = matrix_pair(rng, static_cast<Eigen::Index>(n), true, drift);
    else
        j = atomic_pair(rng, atoms, spread);
    j["description"] = kind + " (seed " + std::to_string(seed) + ")";
    j["options"] = om::Json{{"seed", seed}};

    const std::string text = j.dump(2);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << '\n';
            return 2;
        }
        out << text << '\n';
    }
    return 0;
}
