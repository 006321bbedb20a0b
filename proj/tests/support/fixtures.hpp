#pragma once

#include <string>
#include <vector>

#include "toca/corpus_model.hpp"
#include "toca/tagger.hpp"

namespace fixtures {

// The two hand-countable corpora used throughout the sampler and metrics
// tests (pre-tagged form).
inline const std::vector<std::string> kCorpusA = {
    "a_DT dog_NN runs_VBZ ._.",
    "a_DT dog_NN sleeps_VBZ ._.",
    "a_DT cat_NN runs_VBZ ._.",
};

inline const std::vector<std::string> kCorpusB = {
    "big_JJ dog_NN runs_VBZ ._.",
    "big_JJ dog_NN sleeps_VBZ ._.",
    "big_JJ cat_NN runs_VBZ ._.",
};

inline std::vector<toca::TaggedSentence> tag_pretagged(
    const std::vector<std::string>& lines) {
  auto tagger = toca::make_pretagged_tagger();
  return toca::tag_corpus(lines, *tagger);
}

inline toca::CorpusModel model_from_pretagged(
    const std::vector<std::string>& lines) {
  return toca::build_model(tag_pretagged(lines));
}

// Published prompt/completion pairs, transcribed verbatim. `contains_all`
// records (by hand) whether the completion contains every token as a
// case-insensitive whole word; the filter must agree on every row.
struct PublishedExample {
  std::vector<std::string> tokens;
  const char* slotted;
  const char* completion;
  bool contains_all;
};

inline const std::vector<PublishedExample> kPublishedExamples = {
    // COCO corpus
    {{"dining", "area", "chairs"},
     "[ ] dining [ ] area [ ] with [ ] chairs [ ] .",
     "The dining area is furnished with six chairs around a large table.",
     true},
    {{"elephant", "walking", "water"},
     "[ ] elephant [ ] walking [ ] with [ ] water [ ] on [ ] .",
     "An elephant walking through the jungle with water splashing on its back.",
     true},
    {{"different", "fruits", "sitting", "table"},
     "[ ] different [ ] fruits [ ] sitting [ ] on [ ] table [ ] .",
     "Three different fruits sitting on the kitchen table.", true},
    {{"close", "plate", "broccoli", "table", "food"},
     "[ ] close [ ] plate [ ] of [ ] broccoli [ ] on [ ] table [ ] with [ ] "
     "food [ ] .",
     "A close plate of broccoli sits on the table with other food.", true},
    {{"son", "kite", "beach"},
     "[ ] son [ ] in [ ] kite [ ] off [ ] of [ ] beach [ ] .",
     "The son launches a kite from the edge of the sandy beach.", true},
    {{"woman", "holding", "white", "tennis"},
     "[ ] woman [ ] holding [ ] white [ ] tennis [ ] .",
     "A woman holding a white tennis racket.", true},
    {{"man", "front", "sitting", "table"},
     "[ ] man [ ] of [ ] front [ ] sitting [ ] table [ ] .",
     "A man sitting at the front table of a caf.", true},
    {{"limit", "sign"}, "[ ] limit [ ] sign [ ] in [ ] of [ ] .",
     "The speed limit sign is in the center of the roundabout, limiting the "
     "vehicles' speed.",
     true},
    // Flickr30k corpus
    {{"sunglasses", "building"}, "[ ] sunglasses [ ] on [ ] building [ ] .",
     "Sunglasses placed on the window of a modern building.", true},
    {{"seven", "water", "people", "table"},
     "[ ] seven [ ] water [ ] people [ ] with [ ] table [ ] .",
     "Seven people enjoying water at a table for a picnic.", true},
    {{"woman", "pier", "water"},
     "[ ] woman [ ] with [ ] pier [ ] in [ ] water [ ] .",
     "A woman fishing with a pierced lip in the clear waters of a lake.",
     false},  // neither "pier" nor "water" appears as a whole word
    {{"older", "shirt", "standing", "front"},
     "[ ] older [ ] shirt [ ] standing [ ] in [ ] front [ ] .",
     "An older man wearing a faded blue shirt is standing in front of the "
     "crowd.",
     true},
    {{"teams", "playing", "field"},
     "[ ] teams [ ] playing [ ] field [ ] by [ ] .",
     "Two baseball teams playing on a sunny field by the umpire.", true},
    {{"young", "girl", "boy", "shirt"},
     "[ ] young [ ] girl [ ] in [ ] boy [ ] of [ ] shirt [ ] .",
     "A young girl in a red shirt is playing with a boy wearing a blue "
     "shirt.",
     true},
    {{"child", "playing", "grass", "wearing", "front"},
     "[ ] child [ ] playing [ ] grass [ ] while [ ] wearing [ ] front [ ] .",
     "A child playing in the green grass while wearing a red front shirt.",
     true},
    {{"young", "front", "girl", "shirt"},
     "[ ] young [ ] front [ ] for [ ] girl [ ] of [ ] shirt [ ] .",
     "A young girl stands in front, holding up a red shirt for her friend to "
     "see.",
     true},
    {{"pretty", "woman", "wearing", "dress"},
     "[ ] pretty [ ] woman [ ] wearing [ ] over [ ] dress [ ] .",
     "A pretty woman wearing a red overcoat over a floral dress is walking "
     "in the park.",
     true},
    {{"shorts", "green", "ball", "hit", "background", "man", "table"},
     "[ ] shorts [ ] in [ ] green [ ] ball [ ] hit [ ] background [ ] with "
     "[ ] man [ ] while [ ] table [ ] .",
     "A man wearing shorts hits a green ball against the background with a "
     "table nearby.",
     false},  // "hit" only appears inflected as "hits"
    {{"singing", "white", "man", "playing", "guitar"},
     "[ ] singing [ ] in [ ] white [ ] man [ ] playing [ ] guitar [ ] .",
     "A white man playing the guitar and singing in a quiet room.", true},
    // FlickrStyle10k humor corpus
    {{"young", "pink", "shirt"},
     "[ ] young [ ] pink [ ] and [ ] shirt [ ] into [ ] .",
     "A young girl in a pink dress and a white shirt runs into the garden.",
     true},
    {{"man", "walk", "street"},
     "[ ] man [ ] walk [ ] street [ ] after [ ] by [ ] .",
     "A man walks down the street after sunset.",
     false},  // "walk" only appears inflected as "walks"
    {{"red", "ball", "water", "trying"},
     "[ ] red [ ] ball [ ] at [ ] water [ ] trying [ ] like [ ] .",
     "A red ball floating at the surface of the water, trying to stay "
     "afloat.",
     true},
    {{"dog", "bones"}, "[ ] dog [ ] with [ ] bones [ ] in [ ] , [ ] there [ ] .",
     "A dog chewing on bones, scattered around its den, in the forest.", true},
    {{"child", "blue", "shirt", "white"},
     "[ ] child [ ] under [ ] blue [ ] shirt [ ] white [ ] for [ ] .",
     "A child wearing a blue shirt and a white sweater is playing for "
     "forty-five minutes.",
     true},
    {{"jacket", "playing"},
     "[ ] jacket [ ] of [ ] playing [ ] and [ ] for [ ] .",
     "A red jacket being worn by two children playing tag in the park during "
     "recess.",
     true},
    {{"white", "dog", "running", "grass", "looking", "bones"},
     "[ ] white [ ] dog [ ] running [ ] above [ ] grass [ ] looking [ ] for "
     "[ ] bones [ ] .",
     "A white dog running above the green grass, looking for buried bones.",
     true},
    {{"man", "looking", "pokemon", "go"},
     "[ ] man [ ] looking [ ] pokemon [ ] in [ ] go [ ] .",
     "A man looking for a Pokemon Go game character in a park.", true},
    {{"man", "other", "people", "grass"},
     "[ ] man [ ] in [ ] other [ ] people [ ] on [ ] grass [ ] in [ ] from "
     "[ ] of [ ] .",
     "A man watching other people playing football on the grass from the "
     "sidelines.",
     true},
    {{"water", "fish"}, "[ ] water [ ] and [ ] fish [ ] on [ ] for [ ] .",
     "A large aquarium filled with colorful fish and clear water on the "
     "living room table.",
     true},
    {{"dog", "ball", "trying", "win"},
     "[ ] dog [ ] over [ ] ball [ ] of [ ] trying [ ] win [ ] .",
     "A dog eagerly chasing after a red ball, trying to win it over.", true},
    // FlickrStyle10k romantic corpus
    {{"surfer", "riding", "wave"},
     "[ ] surfer [ ] riding [ ] with [ ] wave [ ] that [ ] .",
     "A surfer riding the crest of a towering wave, its white foamy tips "
     "crashing around him.",
     true},
    {{"huge", "wave"}, "[ ] huge [ ] wave [ ] for [ ] by [ ] on [ ] .",
     "A huge wave crashing against the shore for hours, relentlessly pounded "
     "by the strong winds.",
     true},
    {{"back", "owner"}, "[ ] back [ ] owner [ ] near [ ] .",
     "The lost item is close to the owner's back.", true},
    {{"man", "holding", "camera", "love"},
     "[ ] man [ ] holding [ ] in [ ] camera [ ] , [ ] for [ ] love [ ] .",
     "A man holding a camera in front of a beautiful sunset, capturing the "
     "moment for love.",
     true},
    {{"couple", "love", "street"},
     "[ ] couple [ ] and [ ] love [ ] street [ ] for [ ] .",
     "A couple falls in love strolling down the vibrant and colorful Flower "
     "Street every evening.",
     true},
    {{"stand", "waiting"},
     "[ ] stand [ ] waiting [ ] for [ ] on [ ] and [ ] .",
     "Three people stand at the bus stop, waiting for the bus to arrive on a "
     "rainy corner.",
     true},
    {{"play", "snow"},
     "[ ] play [ ] and [ ] snow [ ] on [ ] neither [ ] how [ ] .",
     "People play in the snow neither melts nor sticks to the ground.", true},
    {{"bicycle", "ramp"}, "[ ] bicycle [ ] in [ ] ramp [ ] at [ ] , [ ] .",
     "A bicycle rolls down a steep ramp at the park.", true},
    {{"girl", "stands", "next", "water"},
     "[ ] girl [ ] stands [ ] in [ ] next [ ] water [ ] and [ ] below [ ] as "
     "[ ] .",
     "A girl stands next to the shore, gazes at the calm water and reflects "
     "deeply.",
     true},
    {{"white", "hat"}, "[ ] white [ ] hat [ ] , [ ] .",
     "A man wearing a white sun hat, shielding his eyes from the bright "
     "sunlight.",
     true},
    {{"jumps", "pool", "water"},
     "[ ] jumps [ ] pool [ ] and [ ] with [ ] water [ ] .",
     "Someone jumps into a swimming pool and splashes around with water.",
     true},
    // MSR-VTT corpus
    {{"people", "dance", "stage"},
     "[ ] people [ ] dance [ ] around [ ] stage [ ] and [ ] .",
     "Several people dance around an elaborate stage setup and sing into "
     "microphones.",
     true},
    {{"boy", "hugging", "woman"},
     "[ ] boy [ ] hugging [ ] on [ ] woman [ ] .",
     "A young boy hugging an elderly woman on the park bench.", true},
    {{"man", "ted", "talk"}, "[ ] man [ ] of [ ] ted [ ] talk [ ] .",
     "A man giving a thought-provoking TED talk on technology.", true},
    {{"sandwich", "head"}, "[ ] sandwich [ ] on [ ] head [ ] in [ ] .",
     "A man accidentally drops a sandwich on another man's head at the "
     "picnic.",
     true},
    {{"tiger", "killing", "man"},
     "[ ] tiger [ ] killing [ ] man [ ] and [ ] about [ ] .",
     "A tiger on the loose, killing a man and leaving authorities searching "
     "for it in the forest.",
     true},
    {{"kid", "playing", "game", "other", "video", "car"},
     "[ ] kid [ ] playing [ ] game [ ] other [ ] video [ ] at [ ] car [ ] .",
     "A kid playing a video game on a car seat next to another kid.",
     false},  // "other" only appears inside "another"
    {{"vine", "compilation"},
     "[ ] vine [ ] compilation [ ] and [ ] and [ ] .",
     "A vine compilation of honeysuckle and jasmine flowers growing entwined "
     "around a trellis.",
     true},
    {{"person", "discussing", "s", "game"},
     "[ ] person [ ] discussing [ ] s [ ] and [ ] game [ ] .",
     "A person is passionately discussing the strategies and rules of a "
     "chess game.",
     false},  // "s" never stands alone
    {{"children", "cartoon"}, "[ ] children [ ] cartoon [ ] and [ ] .",
     "Several children watching an animated cartoon show together.", true},
    {{"feet", "water"}, "[ ] feet [ ] from [ ] water [ ] .",
     "The feet of the swimmer are only a few inches from the crystal-clear "
     "water.",
     true},
    {{"animated", "cartoon", "man"},
     "[ ] animated [ ] cartoon [ ] about [ ] man [ ] .",
     "An animated cartoon about a man who becomes a superhero.", true},
};

}  // namespace fixtures
