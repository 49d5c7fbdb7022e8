# Authoring script for fixtures/miniwiki.xml. Run from the repository root.
from xml.sax.saxutils import escape
pages = []
def page(title, text, ns=0, redirect=None):
    pages.append((title, ns, redirect, text.strip("\n")))

page("Santa Barbara", """
{{Infobox settlement|name=Santa Barbara|nickname=[[American Riviera]]|state=[[California]]}}
{{coord|34|24|57|N|119|50|54|W|display=title}}
'''Santa Barbara''' is a coastal city on the [[Pacific Ocean]] known for its [[Beach|beaches]], its [[University|university campus]] and its mild climate.

The city attracts [[Tourism|tourists]] all year. Offshore, the [[Oil platform|oil platforms]] of the channel are visible from the shore.

== History ==
The area was settled by the Chumash long before the [[Spanish missions in California|mission]] was founded. In [[1983]] a large storm reshaped the harbor.&lt;ref&gt;See [[Harbor report]].&lt;/ref&gt;

== Surf ==
Local breaks such as Rincon made the city a center of [[Surf|surf]] culture and [[Surfboard|surfboard]] shaping.

Winter swells from the north bring clean [[Ocean wave|waves]] to the point breaks.
""")

page("Malibu", """
{{coord|34.0259|-118.7798}}
'''Malibu''' is a beach city in California famous for [[Surfing|surfing]] at Surfrider Beach.

The city stretches along the [[Pacific Ocean]] coast and is lined with [[Beach|beaches]].

== Culture ==
Malibu appears in countless films about [[Surfboard|longboards]] and beach life. Guards from the county [[Lifeguard|lifeguard]] service patrol the sand.

The local economy depends heavily on [[Tourism|visitors]].
""")

page("Honolulu", """
{{coord|21.3069|-157.8583}}
'''Honolulu''' is the capital of Hawaii on the island of Oahu, a center of [[Polynesia|Polynesian]] culture.

The Waikiki district is the birthplace of modern [[Surfing|surfing]] and home to [[Duke Kahanamoku]].

== Geography ==
Honolulu lies in the middle of the [[Pacific Ocean]]. Its reefs are part of a wider [[Coral reef|coral reef]] system.

The city receives large numbers of [[Tourism|tourists]] every year.
""")

page("Sydney", """
{{coord|-33.8688|151.2093}}
'''Sydney''' is the largest city in Australia, with famous beaches such as Bondi and Manly.

[[Surfing]] arrived in Sydney when [[Duke Kahanamoku]] visited in 1914.

== Sport ==
Sydney is a stronghold of [[Rugby union|rugby union]]. The city's [[Lifeguard|lifesaving clubs]] are among the oldest in the world.

The coastline faces the [[Pacific Ocean]] and attracts [[Tourism|tourism]] from around the world.
""")

page("Biarritz", """
{{coord|43.4832|-1.5586}}
'''Biarritz''' is a town on the Bay of Biscay in southwestern France and a popular [[Beach|beach]] resort.

Biarritz is considered the birthplace of European [[Surfing|surfing]], which arrived there in the 1950s.

== Sport ==
The town's [[Rugby union|rugby union]] club is one of the most successful in France.

Surf schools rent out [[Surfboard|surfboards]] to visitors during the summer season.
""")

page("Münster", """
{{Infobox German location|state=[[North Rhine-Westphalia]]}}
{{coord|51.9625|7.6256|region:DE|display=title}}
'''Münster''' is a city in [[Germany]] known for its cathedral and its [[University|university]].

Münster is famous for the [[Peace of Westphalia]], which was negotiated in its town hall.

== Transport ==
The city has more [[Bicycle|bicycles]] than inhabitants. Cycling is the dominant way of getting around the old town.

{| class="wikitable"
|-
| Bicycles || [[Bicycle]]
|-
| Cars || [[Automobile]]
|}
Bicycle parking garages are found near the main station.
""")

page("Berlin", """
{{coord|52.52|13.405}}
'''Berlin''' is the capital and largest city of [[Germany]].

Berlin has several universities, including the Free University, and is a major center of [[Tourism|tourism]].

== History ==
After the [[Peace of Westphalia]] the city grew as the seat of Brandenburg. On [[October 1]] many historic events occurred.

Berlin is crossed by a dense network of [[Bicycle|bicycle]] lanes.
""")

page("Suva", """
{{coord|18|8|30|S|178|26|31|E}}
'''Suva''' is the capital of Fiji, located in the South [[Pacific Ocean]].

Suva is a cultural center of [[Polynesia]] and Melanesia.

== Economy ==
Nearby [[Coral reef|coral reefs]] attract divers, and [[Tourism|tourism]] is an important industry.

Fiji is also a strong nation in [[Rugby union|rugby union]], especially sevens.
""")

page("Surfing", """
{{Infobox sport|first=Polynesia}}
'''Surfing''' is a surface water sport in which a rider uses a [[Surfboard|board]] to ride on the forward face of a moving [[Ocean wave|wave]]. Surfing is practiced on [[Beach|beaches]] around the world.

== History ==
Surfing originated in [[Polynesia]] and was popularized in the 20th century by [[Duke Kahanamoku]].

From [[Honolulu]] the sport spread to [[Malibu]] and later to Europe through [[Biarritz]].

== Locations ==
Well known surf cities include [[Santa Barbara]] and [[Sydney]].

Many surf spots are protected by a [[Lifeguard|lifeguard]] service.
""")

page("Surfboard", """
'''Surfboards''' are narrow planks used in [[Surfing|surfing]].

Modern boards are made of foam and fiberglass.

== Shaping ==
Board shaping developed in [[Santa Barbara]] and [[Malibu]] workshops during the 1960s.

Shorter boards allow sharper turns on steep [[Ocean wave|waves]].
""")

page("Ocean wave", """
'''Ocean waves''' are surface waves that form on the [[Pacific Ocean]] and other seas.

Waves are generated by wind blowing over a long distance, called the fetch.

== Breaking ==
Waves break when they reach shallow water near a [[Beach|beach]] or a [[Coral reef|reef]].

Breaking waves are ridden by [[Surfing|surfers]].
""")

page("Beach", """
'''A beach''' is a landform alongside a body of water consisting of sand or pebbles.

Beaches are shaped by [[Ocean wave|waves]] and tides.

== Recreation ==
Beaches are centers of [[Tourism|tourism]]. Many are patrolled by a [[Lifeguard|lifeguard]].

Famous beaches exist in [[Sydney]] and [[Malibu]].
""")

page("Pacific Ocean", """
'''The Pacific Ocean''' is the largest ocean on Earth.

The ocean contains thousands of islands, most of them in [[Polynesia]].

== Islands ==
[[Honolulu]] and [[Suva]] are the largest island capitals of the Pacific.

The ocean hosts vast [[Coral reef|coral reefs]].
""")

page("Tourism", """
'''Tourism''' is travel for pleasure or business.

Tourism is one of the largest industries in the world.

== Beach tourism ==
Beach resorts such as [[Biarritz]] and [[Honolulu]] depend on visitors.

City tourism is strong in [[Berlin]] and [[Santa Barbara]].
""")

page("University", """
'''A university''' is an institution of higher education.

Universities award academic degrees in many disciplines.

== Examples ==
The [[Münster|University of Münster]] is one of the largest in [[Germany]].

A campus of the University of California lies on the coast near [[Santa Barbara]].
""")

page("Germany", """
'''Germany''' is a country in Central Europe.

Its capital is [[Berlin]].

== Regions ==
Westphalia in the northwest was the scene of the [[Peace of Westphalia]].

Germany has a strong [[Bicycle|cycling]] culture.
""")

page("Polynesia", """
'''Polynesia''' is a subregion of Oceania made up of more than 1,000 islands in the [[Pacific Ocean]].

Polynesian people are known for their navigation skills.

== Culture ==
Wave riding, the ancestor of [[Surfing|surfing]], was part of Polynesian culture for centuries.

Polynesian dance remains popular in [[Honolulu]].
""")

page("Duke Kahanamoku", """
'''Duke Kahanamoku''' was a Native Hawaiian swimmer who popularized [[Surfing|surfing]].

He was born in [[Honolulu]] in 1890.

== Legacy ==
Duke introduced surfing to Australia during a visit to [[Sydney]].

He is remembered as a hero of [[Polynesia|Polynesian]] sport.
""")

page("Multi-touch", """
'''Multi-touch''' is a technology that enables a surface to recognize two or more points of contact.

Multi-touch tables have been used to explore maps and [[Tourism|tourist]] information.

== Research ==
Research prototypes have been built at many universities.

Some prototypes were developed at the [[University|university]] campus near the coast.
""")

page("George W. Bush", """
'''George W. Bush''' was the 43rd president of the United States.

He has said that he uses virtual globes to look at his Texas ranch.

== Travel ==
During his presidency he visited [[Berlin]] and [[Sydney]].

He also vacationed near [[Santa Barbara]] on several occasions.
""")

page("Rugby union", """
'''Rugby union''' is a team sport that originated in England.

The sport is played by two teams of fifteen players.

== Around the world ==
Rugby union is popular in [[Sydney]] and [[Suva]].

In France, [[Biarritz]] has a famous club.
""")

page("Peace of Westphalia", """
'''The Peace of Westphalia''' is the collective name for treaties signed in 1648.

The treaties ended the Thirty Years' War.

== Negotiation ==
Negotiations took place in [[Münster]] and Osnabrück.

The settlement shaped the later borders of [[Germany]].
""")

page("Bicycle", """
'''A bicycle''' is a human-powered vehicle with two wheels.

Bicycles are widely used for transport and recreation.

== Cycling cities ==
Cities such as [[Münster]] and [[Berlin]] have large cycling networks.

Beach paths in [[Santa Barbara]] are popular with cyclists and [[Tourism|tourists]].
""")

page("Coral reef", """
'''Coral reefs''' are underwater ecosystems held together by calcium carbonate structures.

Reefs produce some of the best [[Ocean wave|waves]] for experienced riders.

== Distribution ==
Large reefs surround [[Suva]] and the islands of [[Polynesia]].

Reefs off [[Honolulu]] are among the most studied in the world.
""")

page("Lifeguard", """
{{coord|95|200}}
'''A lifeguard''' is a rescuer who supervises the safety of swimmers.

Lifeguards patrol [[Beach|beaches]] and swimming pools.

== History ==
Volunteer surf lifesaving began in [[Sydney]] in the early 20th century.

Lifeguards often use a [[Surfboard|rescue board]] to reach swimmers.
""")

page("Oil platform", """
'''An oil platform''' is a large structure with facilities to extract petroleum from beneath the seabed.

Platforms are built on the continental shelf.

== California ==
Several platforms stand in the channel off [[Santa Barbara]].

A major oil spill in 1969 led to new environmental laws in [[California]].
""")

page("1983", """
{{coord|10|10}}
'''1983''' was a common year starting on Saturday.

== Events ==
A winter storm struck [[Santa Barbara]] and damaged the pier.

Many [[Surfing|surfing]] competitions were held on the [[Pacific Ocean]] coast.
""")

page("October 1", """
'''October 1''' is the 274th day of the year in the Gregorian calendar.

== Events ==
On this date a festival was held in [[Berlin]].

Several [[Rugby union|rugby]] clubs were founded on this date.
""")

page("Surf", "#REDIRECT [[Surfing]]", redirect="Surfing")
page("Muenster", "#REDIRECT [[Münster]]", redirect="Münster")
page("Talk:Surfing", "This talk page links [[Sydney]] and should be skipped.", ns=1)

out = ['<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/" version="0.10" xml:lang="en">',
       '  <siteinfo>', '    <sitename>MiniWiki</sitename>', '    <dbname>miniwiki</dbname>',
       '    <case>first-letter</case>', '  </siteinfo>']
for i, (title, ns, redirect, text) in enumerate(pages, start=1):
    out.append('  <page>')
    out.append(f'    <title>{escape(title)}</title>')
    out.append(f'    <ns>{ns}</ns>')
    out.append(f'    <id>{i}</id>')
    if redirect:
        out.append(f'    <redirect title="{escape(redirect)}" />')
    out.append('    <revision>')
    out.append(f'      <id>{1000 + i}</id>')
    out.append('      <timestamp>2007-11-26T00:00:00Z</timestamp>')
    out.append('      <contributor><username>Editor</username><id>7</id></contributor>')
    # text is already XML-escaped where it carries &lt;ref&gt;; escape bare & only
    body = text.replace('&', '&amp;').replace('&amp;lt;', '&lt;').replace('&amp;gt;', '&gt;')
    body = body.replace('<', '&lt;').replace('>', '&gt;')
    out.append(f'      <text xml:space="preserve">{body}</text>')
    out.append('    </revision>')
    out.append('  </page>')
out.append('</mediawiki>')
open('fixtures/miniwiki.xml', 'w', encoding='utf-8').write('\n'.join(out) + '\n')
print(len(pages))
