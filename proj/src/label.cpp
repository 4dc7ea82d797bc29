#include "synchro/label.hpp"

#include <algorithm>

namespace synchro {

namespace {
const std::string kTauName = "tau";
}

bool is_identifier(std::string_view text)
{
    if (text.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front())) return false;
    return std::all_of(text.begin(), text.end(), [&](char c) { return alpha(c) || digit(c); });
}

Label Label::letter(std::string name)
{
    if (name == kTauName) throw Error("the name 'tau' is reserved for the internal action");
    if (!is_identifier(name)) throw Error("invalid letter name '" + name + "'");
    Label l;
    l.name_ = std::move(name);
    return l;
}

Label Label::parse(std::string_view text)
{
    if (text == kTauName) return tau();
    return letter(std::string(text));
}

const std::string& Label::name() const
{
    return is_tau() ? kTauName : name_;
}

std::strong_ordering operator<=>(const Label& lhs, const Label& rhs)
{
    if (lhs.is_tau() != rhs.is_tau()) {
        return lhs.is_tau() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return lhs.name_ <=> rhs.name_;
}

std::string to_string(const Label& label)
{
    return label.name();
}

Alphabet::Alphabet(std::set<std::string> letters) : letters_(std::move(letters))
{
    for (const auto& l : letters_) Label::letter(l);
}

bool Alphabet::contains(const Label& label) const
{
    return label.is_tau() || letters_.count(label.name()) > 0;
}

std::vector<Label> Alphabet::labels() const
{
    std::vector<Label> out;
    out.reserve(letters_.size() + 1);
    for (const auto& l : letters_) out.push_back(Label::letter(l));
    out.push_back(Label::tau());
    return out;
}

bool Alphabet::subset_of(const Alphabet& other) const
{
    return std::includes(other.letters_.begin(), other.letters_.end(), letters_.begin(), letters_.end());
}

} // namespace synchro
