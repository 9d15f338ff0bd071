// Walks the reflexive square through partition, fibration fans, the monomial map and the
// compactified fiber of its diamond mirror, printing what each stage produces.

#include <iostream>

#include "mirrorkit/io.hpp"
#include "mirrorkit/lg.hpp"

using namespace mirrorkit;

int main() {
    const std::string dir = MIRRORKIT_CORPUS_DIR;
    auto gamma = io::read_partition(dir + "/square-vsplit.json");

    auto report = validate_semistable(gamma);
    std::cout << "semi-stable: " << (report.valid ? "yes" : "no") << "\n";
    if (!report.valid) return 1;

    auto k = dual_complex(gamma);
    std::cout << "dual complex: dimension " << k.dimension() << ", " << k.simplices.size() << " simplices\n";

    auto frame = central_frame(gamma);
    auto fans = build_fibration_fans(gamma, frame);
    std::cout << "rays: Sigma_Delta " << fans.sigma_delta.rays().size() << ", Sigma' " << fans.sigma_prime.rays().size()
              << ", Sigma_v " << fans.sigma_v.rays().size() << "\n";

    auto mm = pi_gamma_monomials(fans.sigma_prime, frame);
    std::cout << "pi_Gamma = [";
    for (std::size_t i = 0; i < mm.components.size(); ++i) std::cout << (i ? " : " : "") << monomial_text(mm.components[i], mm.rays);
    std::cout << "]\n";

    auto doc = io::read_nef(dir + "/diamond-nef.json");
    auto verdict = validate_nef(doc.host, doc.parts);
    if (!verdict.valid) {
        std::cout << "nef partition rejected: " << verdict.witness << "\n";
        return 1;
    }
    auto model = givental_hybrid(*verdict.partition, 1);
    auto nd = nabla_data(*verdict.partition);
    for (const auto& eq : compactify_fiber(model, nd)) std::cout << equation_text(eq, nd.rays) << "\n";
    return 0;
}
