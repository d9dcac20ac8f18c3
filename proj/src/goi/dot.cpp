#include "pcfss/goi/dot.hpp"

#include <sstream>
#include <vector>

namespace pcfss::goi {

namespace {

struct Endpoint {
  std::string node;
  Shape shape;
};

struct Ports {
  std::vector<Endpoint> left;
  std::vector<Endpoint> right;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

class DotWriter {
 public:
  Ports render(const Machine& m, const std::string& path, int depth) {
    std::string indent(static_cast<std::size_t>(2 * depth + 2), ' ');
    switch (m.layout()) {
      case Machine::Layout::Leaf:
      case Machine::Layout::Group: {
        std::string id = "n" + path;
        body_ << indent << id << " [label=\"" << escape(m.label()) << "\"];\n";
        Ports p;
        if (!m.dom().is_void()) p.left.push_back({id, m.dom()});
        if (!m.cod().is_void()) p.right.push_back({id, m.cod()});
        return p;
      }
      case Machine::Layout::Compose: {
        auto kids = m.children();
        Ports a = render(*kids[0], path + "_0", depth);
        Ports b = render(*kids[1], path + "_1", depth);
        connect(a.right, b.left, kids[0]->cod(), path, indent);
        return {a.left, b.right};
      }
      case Machine::Layout::Tensor: {
        auto kids = m.children();
        Ports a = render(*kids[0], path + "_0", depth);
        Ports b = render(*kids[1], path + "_1", depth);
        a.left.insert(a.left.end(), b.left.begin(), b.left.end());
        a.right.insert(a.right.end(), b.right.begin(), b.right.end());
        return a;
      }
      case Machine::Layout::Bang:
      case Machine::Layout::Cluster: {
        bool is_bang = m.layout() == Machine::Layout::Bang;
        body_ << indent << "subgraph cluster" << path << " {\n";
        body_ << indent << "  label=\"" << escape(is_bang ? "!" : m.label()) << "\";\n";
        Ports p = render(*m.children()[0], path + "_0", depth + 1);
        body_ << indent << "}\n";
        if (is_bang) {
          for (auto& e : p.left) e.shape = Shape::bang(e.shape);
          for (auto& e : p.right) e.shape = Shape::bang(e.shape);
        }
        return p;
      }
    }
    return {};
  }

  void edge(const std::string& from, const std::string& to, const Shape& s) {
    edges_ << "  " << from << " -> " << to << " [label=\"" << escape(s.str()) << "\"];\n";
  }

  void connect(const std::vector<Endpoint>& out, const std::vector<Endpoint>& in,
               const Shape& shared, const std::string& path, const std::string& indent) {
    if (out.empty() || in.empty()) return;
    if (out.size() == in.size()) {
      bool match = true;
      for (std::size_t i = 0; i < out.size(); ++i) match = match && out[i].shape == in[i].shape;
      if (match) {
        for (std::size_t i = 0; i < out.size(); ++i) edge(out[i].node, in[i].node, out[i].shape);
        return;
      }
    }
    if (out.size() == 1 && in.size() == 1) {
      edge(out[0].node, in[0].node, shared);
      return;
    }
    std::string j = "j" + path;
    body_ << indent << j << " [shape=point];\n";
    for (const auto& e : out) edge(e.node, j, e.shape);
    for (const auto& e : in) edge(j, e.node, e.shape);
  }

  std::string finish(const Machine& m, const std::string& name) {
    Ports p = render(m, "", 0);
    std::ostringstream out;
    out << "digraph \"" << escape(name) << "\" {\n";
    out << "  rankdir=LR;\n  node [shape=box];\n";
    if (!p.left.empty()) out << "  input [shape=plaintext, label=\"" << escape(m.dom().str()) << "\"];\n";
    if (!p.right.empty()) out << "  output [shape=plaintext, label=\"" << escape(m.cod().str()) << "\"];\n";
    out << body_.str();
    for (const auto& e : p.left) edge("input", e.node, e.shape);
    for (const auto& e : p.right) edge(e.node, "output", e.shape);
    out << edges_.str() << "}\n";
    return out.str();
  }

 private:
  std::ostringstream body_;
  std::ostringstream edges_;
};

}  // namespace

std::string to_dot(const Machine& m, const std::string& graph_name) {
  DotWriter w;
  return w.finish(m, graph_name);
}

}  // namespace pcfss::goi
