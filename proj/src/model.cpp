#include "cm/model.hpp"

#include <cctype>

namespace cm {

PhasePoint<Rational> make_point(std::vector<Rational> p, std::vector<Rational> q)
{
    if (p.size() != q.size())
        throw InvalidArgument("p and q must have the same length (got " + std::to_string(p.size()) + " and " +
                              std::to_string(q.size()) + ")");
    if (p.size() < 2) throw InvalidArgument("need at least two particles");
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (q[i] == q[j])
                throw DegenerateConfiguration("coincident positions q" + std::to_string(i + 1) + " = q" +
                                              std::to_string(j + 1) + " = " + to_string(q[i]));
    return PhasePoint<Rational>{std::move(p), std::move(q)};
}

PhasePoint<Rational> parse_point(std::string_view text)
{
    std::vector<Rational> p, q;
    bool have_p = false, have_q = false;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        std::size_t end = i;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        std::string_view field = text.substr(i, end - i);
        if (field.rfind("p=", 0) == 0) {
            p = parse_rational_list(field.substr(2));
            have_p = true;
        } else if (field.rfind("q=", 0) == 0) {
            q = parse_rational_list(field.substr(2));
            have_q = true;
        } else {
            throw InvalidArgument("unexpected field '" + std::string(field) + "' in phase point");
        }
        i = end;
    }
    if (!have_p || !have_q) throw InvalidArgument("phase point needs both p= and q= fields");
    return make_point(std::move(p), std::move(q));
}

std::string to_string(const PhasePoint<Rational>& pt)
{
    std::string s = "p=";
    for (std::size_t i = 0; i < pt.n(); ++i) s += (i ? "," : "") + to_string(pt.p[i]);
    s += " q=";
    for (std::size_t i = 0; i < pt.n(); ++i) s += (i ? "," : "") + to_string(pt.q[i]);
    return s;
}

}  // namespace cm
