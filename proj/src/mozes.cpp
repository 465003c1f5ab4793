#include "treelat/mozes.hpp"

#include "treelat/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace treelat {

Quaternion operator*(const Quaternion &x, const Quaternion &y)
{
   return {x.a0 * y.a0 - x.a1 * y.a1 - x.a2 * y.a2 - x.a3 * y.a3,
           x.a0 * y.a1 + x.a1 * y.a0 + x.a2 * y.a3 - x.a3 * y.a2,
           x.a0 * y.a2 - x.a1 * y.a3 + x.a2 * y.a0 + x.a3 * y.a1,
           x.a0 * y.a3 + x.a1 * y.a2 - x.a2 * y.a1 + x.a3 * y.a0};
}

bool operator<(const Quaternion &x, const Quaternion &y)
{
   if (x.a0 != y.a0) return x.a0 < y.a0;
   if (x.a1 != y.a1) return x.a1 < y.a1;
   if (x.a2 != y.a2) return x.a2 < y.a2;
   return x.a3 < y.a3;
}

std::string to_string(const Quaternion &q)
{
   std::string out = q.a0.get_str();
   const std::pair<const Integer *, char> parts[] = {{&q.a1, 'i'}, {&q.a2, 'j'}, {&q.a3, 'k'}};
   for (const auto &[coef, unit] : parts)
   {
      if (sgn(*coef) == 0) continue;
      out += sgn(*coef) > 0 ? "+" : "-";
      const Integer mag = abs(*coef);
      if (mag != 1) out += mag.get_str();
      out += unit;
   }
   return out;
}

std::optional<std::size_t> GeneratorSet::index_of(const Quaternion &q) const
{
   auto it = std::lower_bound(quats.begin(), quats.end(), q);
   if (it == quats.end() || !(*it == q)) return std::nullopt;
   return static_cast<std::size_t>(it - quats.begin());
}

std::size_t GeneratorSet::conjugate_index(std::size_t k) const
{
   auto idx = index_of(quats.at(k).conjugate());
   if (!idx) throw InvariantError("generator set not closed under conjugation at " + to_string(quats[k]));
   return *idx;
}

bool GeneratorSet::is_representative(std::size_t k) const
{
   return quats.at(k) < quats[conjugate_index(k)];
}

bool is_prime(long n)
{
   if (n < 2) return false;
   for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
   return true;
}

GeneratorSet norm_quaternions(long p)
{
   if (!is_prime(p)) throw HypothesisError(std::to_string(p) + " is not prime");
   if (p % 4 != 1) throw HypothesisError(std::to_string(p) + " is not congruent to 1 mod 4");

   long bound = static_cast<long>(std::sqrt(static_cast<double>(p)));
   while (bound * bound > p) --bound;
   while ((bound + 1) * (bound + 1) <= p) ++bound;

   GeneratorSet out{p, {}};
   for (long a0 = 1; a0 <= bound; a0 += 2)
      for (long a1 = -bound; a1 <= bound; ++a1)
         for (long a2 = -bound; a2 <= bound; ++a2)
            for (long a3 = -bound; a3 <= bound; ++a3)
            {
               if (a1 % 2 != 0 || a2 % 2 != 0 || a3 % 2 != 0) continue;
               if (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p) out.quats.push_back({a0, a1, a2, a3});
            }
   std::sort(out.quats.begin(), out.quats.end());
   if (out.quats.size() != static_cast<std::size_t>(p + 1))
      throw InvariantError("found " + std::to_string(out.quats.size()) + " norm-" + std::to_string(p) +
                           " quaternions, expected " + std::to_string(p + 1));
   return out;
}

namespace {

struct SearchResult
{
   SquareRelation relation;
   std::size_t hits = 0;
};

SearchResult search_relation(const Quaternion &x, const Quaternion &y, const GeneratorSet &ql, const GeneratorSet &qp)
{
   SearchResult out;
   const Quaternion product = x * y;
   for (const auto &yt : ql.quats)
      for (const auto &xt : qp.quats)
      {
         const Quaternion candidate = yt * xt;
         for (int sign : {1, -1})
            if (product == (sign > 0 ? candidate : -candidate))
            {
               if (out.hits == 0) out.relation = {yt, xt, sign};
               ++out.hits;
            }
      }
   return out;
}

SquareRelation unique_or_throw(const SearchResult &res, const Quaternion &x, const Quaternion &y)
{
   if (res.hits != 1)
      throw InvariantError("relation x*y = ±y'*x' for x = " + to_string(x) + ", y = " + to_string(y) + " has " +
                           std::to_string(res.hits) + " solutions, expected exactly one");
   return res.relation;
}

} // namespace

SquareRelation solve_square_relation(const Quaternion &x, const Quaternion &y, const GeneratorSet &ql,
                                     const GeneratorSet &qp)
{
   if (x.norm() != qp.prime || y.norm() != ql.prime)
      throw std::invalid_argument("solve_square_relation: norms " + x.norm().get_str() + ", " + y.norm().get_str() +
                                  " do not match primes " + std::to_string(qp.prime) + ", " +
                                  std::to_string(ql.prime));
   return unique_or_throw(search_relation(x, y, ql, qp), x, y);
}

std::vector<SquareRelation> solve_all_relations(const GeneratorSet &qp, const GeneratorSet &ql)
{
   const std::size_t nl = ql.quats.size();
   std::vector<SearchResult> results(qp.quats.size() * nl);
   par::for_each_index(results.size(), [&](std::size_t k) {
      results[k] = search_relation(qp.quats[k / nl], ql.quats[k % nl], ql, qp);
   });
   std::vector<SquareRelation> out;
   out.reserve(results.size());
   for (std::size_t k = 0; k < results.size(); ++k)
      out.push_back(unique_or_throw(results[k], qp.quats[k / nl], ql.quats[k % nl]));
   return out;
}

std::vector<SquareRelation> solve_all_relations_serial(const GeneratorSet &qp, const GeneratorSet &ql)
{
   std::vector<SquareRelation> out;
   for (const auto &x : qp.quats)
      for (const auto &y : ql.quats) out.push_back(solve_square_relation(x, y, ql, qp));
   return out;
}

namespace {

// Directed edge naming: conjugation-pair representatives become forward
// edges "<prefix><n>" in generator order; conjugates are their reversals.
class EdgeLabels
{
public:
   EdgeLabels(const GeneratorSet &set, char prefix) : set_(set)
   {
      for (std::size_t k = 0; k < set.quats.size(); ++k)
         if (set.is_representative(k))
         {
            names_.push_back(std::string(1, prefix) + std::to_string(names_.size() + 1));
            reps_.push_back(k);
         }
   }

   std::vector<GeometricEdge> edges(const std::string &vertex) const
   {
      std::vector<GeometricEdge> out;
      for (const auto &name : names_) out.push_back({name, vertex, vertex});
      return out;
   }

   DirectedEdgeRef ref(const Quaternion &q) const
   {
      const auto k = set_.index_of(q);
      if (!k) throw InvariantError(to_string(q) + " is not a generator");
      for (std::size_t e = 0; e < reps_.size(); ++e)
      {
         if (reps_[e] == *k) return {names_[e], false};
         if (set_.conjugate_index(reps_[e]) == *k) return {names_[e], true};
      }
      throw InvariantError("no edge for " + to_string(q));
   }

   Quaternion quaternion(const DirectedEdgeRef &ref) const
   {
      for (std::size_t e = 0; e < names_.size(); ++e)
         if (names_[e] == ref.edge)
         {
            const Quaternion &q = set_.quats[reps_[e]];
            return ref.reversed ? q.conjugate() : q;
         }
      throw InvariantError("unknown edge " + ref.edge);
   }

private:
   const GeneratorSet &set_;
   std::vector<std::string> names_;
   std::vector<std::size_t> reps_;
};

} // namespace

SquareComplex generate_mozes_complex(long p, long l)
{
   if (p == l) throw HypothesisError("the primes must be distinct (got p = l = " + std::to_string(p) + ")");
   const GeneratorSet qp = norm_quaternions(p);
   const GeneratorSet ql = norm_quaternions(l);
   const auto relations = solve_all_relations(qp, ql);
   const std::size_t nl = ql.quats.size();

   const std::string vertex = "v0";
   const EdgeLabels horizontal(qp, 'a');
   const EdgeLabels vertical(ql, 'b');

   auto square_for = [&](std::size_t pair) {
      const SquareRelation &rel = relations[pair];
      DirectedSquare t;
      t.a = horizontal.ref(qp.quats[pair / nl]);
      t.b_prime = vertical.ref(ql.quats[pair % nl]);
      t.b = vertical.ref(rel.y_tilde);
      t.a_prime = horizontal.ref(rel.x_tilde);
      return t;
   };

   std::vector<bool> assigned(relations.size(), false);
   std::vector<DirectedSquare> squares;
   for (std::size_t pair = 0; pair < relations.size(); ++pair)
   {
      if (assigned[pair]) continue;
      const DirectedSquare t = square_for(pair);
      for (SigmaTag g : {SigmaTag::identity, SigmaTag::v, SigmaTag::h, SigmaTag::vh})
      {
         // The image is again the square of the pair (a, b') it starts with.
         const DirectedSquare image = sigma_act(t, g);
         const auto i = qp.index_of(horizontal.quaternion(image.a));
         const auto j = ql.index_of(vertical.quaternion(image.b_prime));
         if (!i || !j) throw InvariantError("reflected square leaves the generator sets");
         const std::size_t image_pair = *i * nl + *j;
         if (!square_for(image_pair).same_labels(image))
            throw InvariantError("reflection of " + to_string(t) + " by " + std::string(sigma_name(g)) +
                                 " does not match the solved relation");
         if (g != SigmaTag::identity && assigned[image_pair])
            throw InvariantError("reflection orbits overlap at pair " + std::to_string(image_pair));
         assigned[image_pair] = true;
      }
      squares.push_back(t);
   }

   ordered_json metadata;
   metadata["construction"] = "mozes";
   metadata["p"] = p;
   metadata["l"] = l;
   SquareComplex c({vertex}, horizontal.edges(vertex), vertical.edges(vertex), std::move(squares), std::move(metadata));

   const auto report = validate_vht(c);
   if (!report.ok() || !report.warnings.empty())
      throw InvariantError("generated complex fails validation: " +
                           (report.ok() ? report.warnings.front().message : report.errors.front().message));
   return c;
}

} // namespace treelat
