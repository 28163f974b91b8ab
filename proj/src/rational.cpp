#include "parazone/rational.hpp"

#include "parazone/error.hpp"

#include <algorithm>
#include <cctype>

namespace parazone {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rat parse_rat(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_integer_literal(num) || !is_integer_literal(den))
        throw InvalidInput("malformed rational literal '" + std::string(text) + "'");

    std::string n(num);
    std::string d(den);
    if (n.front() == '+') n.erase(0, 1);
    if (d.front() == '+') d.erase(0, 1);
    mpz_class numerator(n, 10);
    mpz_class denominator(d, 10);
    if (denominator == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");

    Rat value(numerator, denominator);
    value.canonicalize();
    return value;
}

std::string to_string(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rat& value) { return value.get_d(); }

}  // namespace parazone
