#include "eqsurf/dsl.hpp"

#include <cctype>
#include <vector>

#include "eqsurf/error.hpp"

namespace eqsurf {

SurfacePtr t1_anti() { return make_free(NoneqSurface::N(2), {true, true}); }

namespace {

class Parser {
public:
  explicit Parser(const std::string& text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
      s_ += text[i];
      at_.push_back(i);
    }
    at_.push_back(text.size());
  }

  SurfacePtr surface() {
    SurfacePtr d = primary();
    while (i_ < s_.size()) {
      std::size_t op = pos();
      if (eat("#")) {
        NoneqSurface y = noneq();
        d = semantic([&] { return make_connsum(d, y); }, op);
      } else if (eat("+S10AT")) {
        d = semantic([&] { return make_surgery(d, SurgeryKind::S10AT); }, op);
      } else if (eat("+S11AT")) {
        d = semantic([&] { return make_surgery(d, SurgeryKind::S11AT); }, op);
      } else if (eat("+FM")) {
        d = semantic([&] { return make_surgery(d, SurgeryKind::FM); }, op);
      } else {
        fail("expected '#', '+S10AT', '+S11AT' or '+FM'");
      }
    }
    return d;
  }

private:
  std::size_t pos() const { return at_[i_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos()); }

  bool eat(const std::string& tok) {
    if (s_.compare(i_, tok.size(), tok) == 0) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  template <class F>
  SurfacePtr semantic(F&& f, std::size_t where) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const DomainError& e) {
      throw ParseError(e.what(), where);
    }
  }

  int integer() {
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) fail("expected a nonnegative integer");
    if (j - i_ > 6) fail("integer too large");
    int v = std::stoi(s_.substr(i_, j - i_));
    i_ = j;
    return v;
  }

  NoneqSurface noneq() {
    std::size_t where = pos();
    if (eat("M")) return semantic_noneq(true, integer(), where);
    if (eat("N")) return semantic_noneq(false, integer(), where);
    fail("expected M<g> or N<k>");
  }

  NoneqSurface semantic_noneq(bool orientable, int g, std::size_t where) {
    try {
      return orientable ? NoneqSurface::M(g) : NoneqSurface::N(g);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), where);
    }
  }

  SurfacePtr primary() {
    std::size_t where = pos();
    if (eat("S(2,0)")) return make_sphere(SphereKind::S20);
    if (eat("S(2,1)")) return make_sphere(SphereKind::S21);
    if (eat("S(2,2)")) return make_sphere(SphereKind::S22);
    if (eat("S2a")) return make_sphere(SphereKind::S2a);
    if (eat("T1anti")) return t1_anti();
    if (eat("triv(")) {
      NoneqSurface y = noneq();
      expect(")");
      return make_trivial(y);
    }
    if (eat("free(")) {
      NoneqSurface q = noneq();
      expect(",");
      std::vector<bool> w;
      while (i_ < s_.size() && (s_[i_] == '0' || s_[i_] == '1')) w.push_back(s_[i_++] == '1');
      expect(")");
      return semantic([&] { return make_free(q, w); }, where);
    }
    if (eat("doub(")) {
      NoneqSurface y = noneq();
      expect(",");
      DoublingKind k;
      if (eat("S10")) k = DoublingKind::S10;
      else if (eat("S11")) k = DoublingKind::S11;
      else fail("expected S10 or S11");
      expect(")");
      return make_doubling(y, k);
    }
    fail("expected a surface");
  }

  std::string s_;
  std::vector<std::size_t> at_;
  std::size_t i_ = 0;
};

}  // namespace

SurfacePtr parse_surface(const std::string& text) {
  Parser p(text);
  return p.surface();
}

}  // namespace eqsurf
