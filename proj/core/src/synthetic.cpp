#include "tuxqa/synthetic.hpp"

#include <array>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "io_util.hpp"

namespace tuxqa {

namespace {

constexpr std::array<std::string_view, 72> kTags{
    "ubuntu",     "windows",   "grub",        "wireless",  "nvidia",     "amd",        "intel",
    "bluetooth",  "usb",       "ssh",         "apache",    "nginx",      "mysql",      "python",
    "java",       "docker",    "firefox",     "chrome",    "thunderbird", "libreoffice", "gnome",
    "kde",        "unity",     "xorg",        "wayland",   "kernel",     "systemd",    "apt",
    "snap",       "flatpak",   "dpkg",        "ppa",       "bash",       "terminal",   "sudo",
    "cron",       "samba",     "nfs",         "lvm",       "raid",       "ext4",       "ntfs",
    "btrfs",      "swap",      "vpn",         "proxy",     "dns",        "dhcp",       "networkmanager",
    "virtualbox", "vmware",    "wine",        "steam",     "vlc",        "gimp",       "printer",
    "scanner",    "webcam",    "touchpad",    "keyboard",  "monitor",    "hdmi",       "audio",
    "pulseaudio", "laptop",    "battery",     "luks",      "uefi",       "16.04",      "18.04",
    "20.04",      "lubuntu"};

constexpr std::array<std::pair<std::string_view, std::string_view>, 28> kSynonyms{{
    {"wifi", "wireless"},      {"geforce", "nvidia"},     {"radeon", "amd"},
    {"chromium", "chrome"},    {"mozilla", "firefox"},    {"openssh", "ssh"},
    {"apache2", "apache"},     {"mariadb", "mysql"},      {"python3", "python"},
    {"jdk", "java"},           {"gnome-shell", "gnome"},  {"plasma", "kde"},
    {"x11", "xorg"},           {"linux-kernel", "kernel"}, {"apt-get", "apt"},
    {"snapd", "snap"},         {"shell", "bash"},         {"console", "terminal"},
    {"smb", "samba"},          {"vbox", "virtualbox"},    {"sound", "audio"},
    {"pulse", "pulseaudio"},   {"notebook", "laptop"},    {"efi", "uefi"},
    {"xenial", "16.04"},       {"bionic", "18.04"},       {"focal", "20.04"},
    {"nm", "networkmanager"},
}};

constexpr std::array<std::string_view, 27> kVerbs{
    "install", "remove",  "upgrade", "update",  "configure", "mount",   "format",
    "enable",  "disable", "connect", "restart", "backup",    "restore", "compile",
    "download", "open",   "launch",  "share",   "encrypt",   "resize",  "rename",
    "downgrade", "repair", "sync",   "print",   "play",      "reinstall"};

constexpr std::array<std::pair<std::string_view, std::string_view>, 12> kVerbSynonyms{{
    {"install", "setup"},   {"remove", "uninstall"}, {"upgrade", "update"},
    {"update", "upgrade"},  {"restart", "reboot"},   {"launch", "start"},
    {"open", "launch"},     {"repair", "fix"},       {"configure", "setup"},
    {"download", "fetch"},  {"backup", "copy"},      {"reinstall", "install"},
}};

constexpr std::array<std::string_view, 30> kObjects{
    "driver",     "package",  "file",     "folder",     "resolution", "theme",
    "font",       "password", "account",  "desktop",    "panel",      "shortcut",
    "service",    "server",   "repository", "disk",     "drive",      "firmware",
    "module",     "library",  "profile",  "connection", "network",    "display",
    "permission", "workspace", "partition", "cache",    "plugin",     "database"};

constexpr std::array<std::pair<std::string_view, std::string_view>, 14> kObjectSynonyms{{
    {"folder", "directory"}, {"file", "document"},     {"password", "passphrase"},
    {"account", "user"},     {"desktop", "gui"},       {"panel", "taskbar"},
    {"shortcut", "hotkey"},  {"service", "daemon"},    {"repository", "repo"},
    {"disk", "hdd"},         {"drive", "ssd"},         {"display", "screen"},
    {"partition", "volume"}, {"plugin", "extension"},
}};

constexpr std::array<std::string_view, 24> kFiller{
    "system",  "computer", "machine", "option",   "menu",    "settings", "command", "output",
    "message", "guide",    "tutorial", "release", "default", "manual",   "forum",   "week",
    "screen",  "window",   "button",  "process",  "config",  "answer",   "problem", "documentation"};

constexpr std::array<std::string_view, 6> kNegPhrases{
    "crashes", "freezes", "fails", "hangs", "is broken", "keeps crashing"};

constexpr std::array<std::string_view, 4> kFactualTitles{
    "How do I {verb} the {t1} {obj} on {t2}?",
    "How to {verb} {obj} for {t1} in {t2}",
    "What is the best way to {verb} {t1} {obj} with {t2}?",
    "Is it possible to {verb} the {obj} of {t1} from {t2}?"};

constexpr std::array<std::string_view, 4> kTroubleTitles{
    "{T1} {obj} {neg} after I {verb} {t2}",
    "Cannot {verb} {t1} {obj} on {t2}",
    "{T1} {obj} not working when I {verb} {t2}",
    "Error when trying to {verb} {obj} for {t1} in {t2}"};

constexpr std::array<std::string_view, 4> kFactualQueries{
    "how can I {verb} {obj} for {t1} running {t2}",
    "{verb} {t1} {obj} on {t2}",
    "steps to {verb} the {obj} for {t1} under {t2}?",
    "I want to {verb} {t1} {obj} with {t2}. How?"};

constexpr std::array<std::string_view, 4> kTroubleQueries{
    "{t1} {obj} {neg} when I {verb} on {t2}",
    "unable to {verb} {obj} in {t1} with {t2}",
    "my {t1} {obj} is broken since I {verb} {t2}",
    "{verb} {t2} made the {t1} {obj} {neg}"};

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool percent(unsigned p) { return below(100) < p; }
  template <typename Array>
  auto pick(const Array& a) { return a[below(a.size())]; }

private:
  std::mt19937_64 gen_;
};

std::string capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string fill(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i);
      const auto key = std::string(tmpl.substr(i + 1, close - i - 1));
      out += vars.at(key);
      i = close + 1;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

std::string_view alias_of(std::string_view tag) {
  for (const auto& [alias, canonical] : kSynonyms) {
    if (canonical == tag) return alias;
  }
  return {};
}

std::string_view verb_synonym(std::string_view verb) {
  for (const auto& [v, syn] : kVerbSynonyms) {
    if (v == verb) return syn;
  }
  return {};
}

std::string_view object_synonym(std::string_view object) {
  for (const auto& [o, syn] : kObjectSynonyms) {
    if (o == object) return syn;
  }
  return {};
}

std::string body_for(Rng& rng, std::string_view verb, std::string_view obj, std::string_view t1,
                     std::string_view t2) {
  const auto t3 = rng.pick(kTags);
  std::string body;
  body += "<p>I am using " + std::string(t2) + " together with " + std::string(t1) + ". I need to " +
          std::string(verb) + " the " + std::string(obj) + " but the " + std::string(rng.pick(kFiller)) +
          " shows nothing useful.</p>\n";
  body += "<p>I tried the " + std::string(rng.pick(kFiller)) + " from the " + std::string(rng.pick(kFiller)) +
          " and checked the " + std::string(rng.pick(kFiller)) + " twice.</p>\n";
  body += "<pre><code>sudo apt-get install " + std::string(t1) + "-" + std::string(obj) + "\n</code></pre>\n";
  body += "<p>Could " + std::string(t3) + " be related to the " + std::string(rng.pick(kFiller)) + "?</p>";
  return body;
}

std::string answer_for(Rng& rng, std::string_view verb, std::string_view obj, std::string_view t1) {
  return "<p>Open a terminal and run:</p>\n<pre><code>sudo " + std::string(verb) + "-" + std::string(t1) +
         " --" + std::string(obj) + "\n</code></pre>\n<p>Then reboot and check the " +
         std::string(rng.pick(kFiller)) + " again.</p>";
}

}  // namespace

std::string csv_quote(std::string_view field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

SyntheticDataset generate_synthetic(const SyntheticOptions& options) {
  Rng rng(options.seed);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> used;
  std::vector<Post> posts;
  std::vector<std::pair<std::string, PostId>> gold;
  PostId next_id = 1;

  for (std::size_t q = 0; q < options.questions; ++q) {
    std::size_t v, o, a, b;
    do {
      v = rng.below(kVerbs.size());
      o = rng.below(kObjects.size());
      a = rng.below(kTags.size());
      b = rng.below(kTags.size());
    } while (a == b || !used.emplace(v, o, a, b).second);

    const auto verb = kVerbs[v];
    const auto obj = kObjects[o];
    const auto t1 = kTags[a];
    const auto t2 = kTags[b];
    const bool trouble = rng.percent(options.troubleshooting_percent);
    const auto neg = rng.pick(kNegPhrases);

    std::map<std::string, std::string> vars{{"verb", std::string(verb)}, {"obj", std::string(obj)},
                                            {"t1", std::string(t1)},     {"T1", capitalize(t1)},
                                            {"t2", std::string(t2)},     {"neg", std::string(neg)}};
    const auto title_template = rng.below(4);
    Post question;
    question.id = next_id++;
    question.kind = PostKind::Question;
    question.title = fill(trouble ? kTroubleTitles[title_template] : kFactualTitles[title_template], vars);
    question.body = body_for(rng, verb, obj, t1, t2);
    question.tags = {std::string(t1), std::string(t2)};
    question.score = static_cast<std::int64_t>(rng.below(50));

    std::vector<Post> answers;
    if (rng.percent(options.answered_percent)) {
      Post answer;
      answer.id = next_id++;
      answer.kind = PostKind::Answer;
      answer.parent_id = question.id;
      // A few accepted answers carry nothing but markup.
      answer.body = rng.percent(3) ? "<p> </p>" : answer_for(rng, verb, obj, t1);
      answer.score = static_cast<std::int64_t>(rng.below(80));
      question.accepted_answer_id = answer.id;
      answers.push_back(std::move(answer));
    }
    if (rng.percent(20)) {
      Post extra;
      extra.id = next_id++;
      extra.kind = PostKind::Answer;
      extra.parent_id = question.id;
      extra.body = "<p>Did you try restarting the " + std::string(rng.pick(kFiller)) + "?</p>";
      answers.push_back(std::move(extra));
    }

    // Paraphrase: other template, maybe verb and object synonyms, at most one tag alias.
    auto qvars = vars;
    if (auto syn = verb_synonym(verb); !syn.empty() && rng.percent(50)) qvars["verb"] = std::string(syn);
    if (auto syn = object_synonym(obj); !syn.empty() && rng.percent(50)) qvars["obj"] = std::string(syn);
    const auto alias_slot = rng.below(3);  // 0: none, 1: t1, 2: t2
    if (alias_slot == 1 && !alias_of(t1).empty()) qvars["t1"] = std::string(alias_of(t1));
    if (alias_slot == 2 && !alias_of(t2).empty()) qvars["t2"] = std::string(alias_of(t2));
    qvars["neg"] = std::string(rng.pick(kNegPhrases));
    const auto query_template = rng.below(4);
    gold.emplace_back(fill(trouble ? kTroubleQueries[query_template] : kFactualQueries[query_template], qvars),
                      question.id);

    posts.push_back(std::move(question));
    for (auto& ans : answers) posts.push_back(std::move(ans));
  }

  std::set<std::string> tags(kTags.begin(), kTags.end());
  std::map<std::string, std::string> synonyms;
  for (const auto& [alias, canonical] : kSynonyms) synonyms.emplace(alias, canonical);

  SyntheticDataset out{Corpus::from_posts(std::move(posts)), TagCatalog(std::move(tags), std::move(synonyms)), {}};
  for (auto& [text, id] : gold) out.gold.push_back({std::move(text), id});
  return out;
}

void write_synthetic(const SyntheticDataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_jsonl(dataset.corpus, dir / "corpus.jsonl");

  std::string tags;
  for (const auto& t : dataset.catalog.canonical_tags()) tags += t + "\n";
  detail::write_file(dir / "tags.txt", tags);

  std::string synonyms = "# alias,canonical\n";
  for (const auto& [alias, canonical] : dataset.catalog.synonyms()) synonyms += alias + "," + canonical + "\n";
  detail::write_file(dir / "tag_synonyms.csv", synonyms);

  std::string gold;
  for (const auto& g : dataset.gold) gold += csv_quote(g.query_text) + "," + std::to_string(g.gold_question_id) + "\n";
  detail::write_file(dir / "gold_queries.csv", gold);
}

}  // namespace tuxqa
