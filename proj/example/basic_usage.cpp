// Builds the q-hypergeometric solution F at p = 3, checks L[F] = 0 and one
// Dwork-type congruence, and prints the first coefficients.

#include <iostream>

#include "qdwork/qdwork.hpp"

int main() {
    using namespace qdwork;
    Prec pr = make_prec(3, 6, 4, 16);
    auto ctx = context_for(pr);

    std::cout << "F = " << ctx->F().truncated(2, 4).to_string() << "\n";
    std::cout << "L[F] == 0: " << std::boolalpha << apply_L(ctx->F()).is_zero() << "\n";

    CongruenceReport r = check_cor_ii(*ctx, 1, 1, 1);
    std::cout << r.claim << " " << r.params.dump() << " mod " << r.modulus << ": " << to_string(r.verdict) << "\n";
    return r.holds() ? 0 : 1;
}
